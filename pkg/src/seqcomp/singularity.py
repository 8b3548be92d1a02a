"""Stable module homs, syzygies and homs in the singularity category."""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

import numpy as np

from . import exactla as la
from .algebra import (Algebra, AlgebraError, HomSpace, Module, is_projective, k_dual, lift_through, module_hom,
                      projective_cover, submodule)
from .exactla import DTYPE, mul, zeros


def stable_hom(m: Module, n: Module) -> HomSpace:
    """``Hom(M, N)`` modulo maps factoring through a projective.

    Everything factoring through a projective factors through the cover
    ``P(N) -> N``, so the ideal is the image of ``Hom(M, P(N))``.
    """
    p = m.p
    full = module_hom(m, n)
    pn, cover = projective_cover(n)
    through = module_hom(m, pn)
    ideal = np.array([full.coords(mul(cover, g, p)) for g in through.basis], dtype=DTYPE).T \
        if through.dim else zeros(full.dim, 0)
    lift, proj = la.quotient_basis(la.eye(full.dim), ideal % p, p)
    basis = [full.element(lift[:, j]) for j in range(lift.shape[1])]

    def coords(f):
        return mul(proj, full.coords(f).reshape(-1, 1), p)[:, 0] if proj.shape[0] else zeros(0, 1)[:, 0]

    def element(c):
        return full.element(mul(lift, c.reshape(-1, 1), p)[:, 0]) if lift.shape[1] else zeros(n.dim, m.dim)

    hs = HomSpace(m, n, basis, coords, element, p, kind="stable")
    hs.meta["ideal_dim"] = la.rank(ideal, p) if ideal.size else 0
    return hs


def syzygy(m: Module) -> Tuple[Module, np.ndarray, Module, np.ndarray]:
    """``Omega M = ker(P(M) -> M)`` as ``(Omega M, inclusion, P(M), cover)``."""
    hit = m.__dict__.get("_syzygy")
    if hit is not None:
        return hit
    p = m.p
    pm, cover = projective_cover(m)
    if pm.dim == 0:
        z = m.algebra.zero_module()
        out = (z, zeros(0, 0), pm, cover)
    else:
        ker = la.kernel_basis(cover, p)
        om, inc = submodule(pm, ker, name=f"Omega({m.name})" if m.name else "")
        out = (om, inc, pm, cover)
    m.__dict__["_syzygy"] = out
    return out


def syzygy_power(m: Module, k: int) -> Module:
    for _ in range(k):
        m = syzygy(m)[0]
    return m


def syzygy_map(f: np.ndarray, m: Module, n: Module) -> np.ndarray:
    """``Omega f``: lift ``f`` to the covers and restrict to the kernels."""
    p = m.p
    om, im_, pm, cm = syzygy(m)
    on, in_, pn, cn = syzygy(n)
    if om.dim == 0 or on.dim == 0:
        return zeros(on.dim, om.dim)
    g = lift_through(mul(f, cm, p), cn, pm, pn)
    if g is None:
        raise AlgebraError("map does not lift to projective covers")
    sol = la.solve(in_, mul(g, im_, p), p)
    if sol is None:
        raise AlgebraError("lift does not preserve syzygies")
    return sol


def is_self_injective(alg: Algebra) -> bool:
    """Lambda is self-injective iff the k-dual of the regular left module is projective."""
    op = alg.opposite()
    d = k_dual(op.regular_module())
    if d.algebra is not alg:
        raise AlgebraError("duality landed over the wrong algebra")
    return is_projective(d)


def projective_dimension(m: Module, horizon: int) -> Optional[int]:
    """Projective dimension if it is at most ``horizon``; None otherwise."""
    cur = m
    for k in range(horizon + 1):
        if cur.dim == 0:
            return max(0, k - 1)
        if is_projective(cur):
            return k
        cur = syzygy(cur)[0]
    return None


def sg_hom(m: Module, n: Module, shift: int = 0, horizon: int = 6) -> HomSpace:
    """``colim_k stable_hom(Omega^{k+a} M, Omega^{k+b} N)`` with ``a - b = shift``.

    The meta dict records ``certified`` and the reason: self-injective
    algebras stabilize at once (Omega is an autoequivalence of the stable
    category), and a term that has become zero forces every later one to be
    zero.  Otherwise the answer is tagged with the horizon.
    """
    a, b = (shift, 0) if shift >= 0 else (0, -shift)
    p = m.p
    alg = m.algebra
    self_inj = is_self_injective(alg)
    ms = [syzygy_power(m, a)]
    ns = [syzygy_power(n, b)]
    dims: List[int] = []
    spaces: List[HomSpace] = []
    transitions_bij: List[bool] = []
    for k in range(horizon + 1):
        hs = stable_hom(ms[k], ns[k])
        spaces.append(hs)
        dims.append(hs.dim)
        ms.append(syzygy(ms[k])[0])
        ns.append(syzygy(ns[k])[0])
        if k > 0:
            prev = spaces[k - 1]
            cols = [hs.coords(syzygy_map(f, ms[k - 1], ns[k - 1])) for f in prev.basis]
            t = np.array(cols, dtype=DTYPE).T if cols else zeros(hs.dim, 0)
            transitions_bij.append(t.shape[0] == t.shape[1] and (la.rank(t, p) if t.size else 0) == t.shape[0])
    first_zero = next((k for k in range(horizon + 1) if ms[k].dim == 0 or ns[k].dim == 0
                       or is_projective(ms[k])), None)
    if self_inj and all(transitions_bij):
        certified, reason, idx = True, "self-injective: Omega is an equivalence", 0
    elif first_zero is not None:
        certified, reason, idx = True, "syzygies become projective", first_zero
    else:
        idx = next((k for k in range(horizon + 1) if all(transitions_bij[k:])), horizon)
        certified, reason = False, f"stable from {idx} within horizon {horizon}"
    out = spaces[idx]
    out.meta.update(certified=certified, reason=reason, index=idx, dims=dims, shift=shift,
                    kind_detail="singularity")
    return out


def perfect_quotient_dim(m: Module, n: Module, degrees=(-1, 0, 1)) -> Tuple[int, int]:
    """``(dim Hom, dim of the ideal of maps through perfect complexes)`` for ``trunc(M) -> trunc(N)``.

    The ideal is spanned by composites through constant sequences at shifted
    indecomposable projectives; it contains every map through a projective
    module, so for self-injective algebras the quotient is the stable hom.
    """
    from .complexes import stalk
    from .completion import completion_compose, completion_hom, constant, truncation_sequence
    p = m.p
    x, y = truncation_sequence(stalk(m, 0)), truncation_sequence(stalk(n, 0))
    target = completion_hom(x, y)
    vecs = []
    for pi in m.algebra.proj_classes():
        for d in degrees:
            c = constant(stalk(pi.module, d))
            h1, h2 = completion_hom(x, c), completion_hom(c, y)
            for a in la.eye(h1.dim):
                for b in la.eye(h2.dim):
                    vecs.append(completion_compose(h1, a, h2, b, target))
    ideal = np.array(vecs, dtype=DTYPE).T if vecs else zeros(target.dim, 0)
    r = la.rank(ideal, p) if ideal.size else 0
    return target.dim, r
