"""Finite-dimensional algebras over prime fields and their right modules.

Conventions
-----------
Elements of an algebra are coordinate vectors in the basis ``b_0..b_{n-1}``
and ``c[i, j]`` is the coordinate vector of ``b_i * b_j``.

A right module stores one matrix per basis element in *column* convention:
``mats[a] @ v`` is the coordinate vector of ``v * b_a``.  Hence
``act(x * y) = act(y) @ act(x)``.  The row-convention matrices (for which
``rho(b_i) rho(b_j) = sum_k c_ijk rho(b_k)``) are available as ``action``.

A module map ``M -> N`` is a ``(dim N, dim M)`` matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from . import exactla as la
from .exactla import DTYPE, mul, zeros


class AlgebraError(ValueError):
    pass


class NotSplitError(AlgebraError):
    """Raised when the semisimple quotient has a non-split simple factor."""


# ---------------------------------------------------------------------------
# hom spaces


class HomSpace:
    """A finite-dimensional hom group given by representative morphisms.

    ``coords`` sends a morphism to its coordinate vector in ``basis``;
    ``element`` goes the other way.  Representatives are independent modulo
    whatever ideal the constructor divided out.
    """

    def __init__(self, source, target, basis: list, coords: Callable, element: Callable, p: int,
                 kind: str = "module"):
        self.source = source
        self.target = target
        self.basis = basis
        self._coords = coords
        self._element = element
        self.p = p
        self.kind = kind
        self.meta: dict = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, f) -> np.ndarray:
        return self._coords(f) % self.p

    def element(self, c) -> object:
        return self._element(np.asarray(c, dtype=DTYPE) % self.p)

    def is_zero(self, f) -> bool:
        return not np.any(self.coords(f))

    def __repr__(self):
        return f"HomSpace({self.kind}, dim={self.dim})"


def composition_table(first: HomSpace, second: HomSpace, result: HomSpace, compose: Callable) -> np.ndarray:
    """``T[a, b] = coords of second.basis[b] o first.basis[a]`` in ``result``."""
    t = zeros(first.dim * second.dim, result.dim).reshape(first.dim, second.dim, result.dim)
    for a, f in enumerate(first.basis):
        for b, g in enumerate(second.basis):
            t[a, b] = result.coords(compose(g, f))
    return t


# ---------------------------------------------------------------------------
# algebras


@dataclass
class ProjIndec:
    """An indecomposable projective ``e * Lambda`` with its simple top."""

    index: int
    idempotent: np.ndarray
    span_idx: List[int]          # b_j with e*b_j a basis of e*Lambda
    module: "Module" = None
    gen: np.ndarray = None       # coordinates of e inside the module basis
    simple: "Module" = None
    top: np.ndarray = None       # projection module -> simple
    label: str = ""


class Algebra:
    """Associative unital algebra over ``F_p`` given by structure constants."""

    def __init__(self, structure, unit, p: int, labels: Optional[Sequence[str]] = None,
                 name: str = "", idempotents: Optional[Sequence] = None,
                 vertex_labels: Optional[Sequence[str]] = None, check: bool = True):
        self.p = la.check_prime(p)
        c = np.array(structure, dtype=DTYPE) % self.p
        if c.ndim != 3 or c.shape[0] != c.shape[1] or c.shape[1] != c.shape[2]:
            raise AlgebraError("structure constants must form an n x n x n array")
        self.dim = c.shape[0]
        self.c = c
        self.unit = np.array(unit, dtype=DTYPE) % self.p
        self.labels = list(labels) if labels else [f"b{i}" for i in range(self.dim)]
        self.name = name
        self._hint = [np.array(e, dtype=DTYPE) % self.p for e in idempotents] if idempotents else None
        self._vertex_labels = list(vertex_labels) if vertex_labels else None
        self._cache: dict = {}
        self._op: Optional[Algebra] = None
        if check:
            self.validate()

    def __repr__(self):
        return f"Algebra({self.name or '?'}, p={self.p}, dim={self.dim})"

    # -- basic arithmetic -------------------------------------------------
    def validate(self):
        p, c, n = self.p, self.c, self.dim
        left = np.einsum("ijl,lkm->ijkm", c, c) % p
        right = np.einsum("jkl,ilm->ijkm", c, c) % p
        bad = np.argwhere(np.any(left != right, axis=3))
        if bad.size:
            i, j, k = (int(x) for x in bad[0])
            raise AlgebraError(f"associativity fails on basis triple ({i},{j},{k})")
        e = self.unit
        for i in range(n):
            bi = self.basis_vec(i)
            if not (np.array_equal(self.mul(e, bi), bi) and np.array_equal(self.mul(bi, e), bi)):
                raise AlgebraError(f"unit fails on basis element {i}")

    def basis_vec(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=DTYPE)
        v[i] = 1
        return v

    def mul(self, u, v) -> np.ndarray:
        return np.einsum("i,j,ijk->k", u, v, self.c) % self.p

    def left_matrix(self, u) -> np.ndarray:
        """Matrix of ``x -> u*x``."""
        return np.einsum("i,ijk->kj", u, self.c) % self.p

    def right_matrix(self, u) -> np.ndarray:
        """Matrix of ``x -> x*u``."""
        return np.einsum("i,jik->kj", u, self.c) % self.p

    def span_products(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Column basis of span{l*r} for columns l of ``left`` and r of ``right``."""
        cols = [self.mul(l, r) for l in left.T for r in right.T]
        if not cols:
            return zeros(self.dim, 0)
        return la.image_basis(np.array(cols, dtype=DTYPE).T, self.p)

    # -- structure ----------------------------------------------------------
    def _memo(self, key, fn):
        # single assignment: a racing recomputation yields an equal value
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def generators(self) -> List[np.ndarray]:
        """Basis elements generating the algebra (used for equivariance systems)."""
        return self._memo("generators", self._generators)

    def _generators(self):
        p = self.p
        gens: List[np.ndarray] = []

        def closure(vs):
            sub = la.image_basis(np.array(vs, dtype=DTYPE).T, p)
            while True:
                prods = self.span_products(sub, sub)
                new = la.image_basis(np.concatenate([sub, prods], axis=1), p)
                if new.shape[1] == sub.shape[1]:
                    return sub
                sub = new

        sub = closure([self.unit])
        for i in range(self.dim):
            b = self.basis_vec(i)
            if not la.in_span(sub, b.reshape(-1, 1), p):
                gens.append(b)
                sub = closure([self.unit] + gens)
        return gens

    def radical(self) -> np.ndarray:
        """Column basis of the Jacobson radical."""
        return self._memo("radical", self._radical)

    def _radical(self):
        # Ronyai / Cohen-Ivanyos-Wales trace filtration on the left regular
        # representation; each step is a linear condition on the previous ideal.
        p, n = self.p, self.dim
        lmats = [self.left_matrix(self.basis_vec(i)) for i in range(n)]
        levels = 0
        while p ** (levels + 1) <= n:
            levels += 1
        ideal = la.eye(n)
        for i in range(levels + 1):
            mod = p ** (i + 1)
            div = p ** i
            g = zeros(n, ideal.shape[1])
            for a in range(ideal.shape[1]):
                u = ideal[:, a]
                for y in range(n):
                    v = self.mul(u, self.basis_vec(y))
                    m = np.einsum("k,kij->ij", v, np.array(lmats)) % p
                    t = int(np.trace(_int_matpow(m, p ** i, mod))) % mod
                    if t % div:
                        raise AlgebraError("trace filtration produced a non-integral value")
                    g[y, a] = (t // div) % p
            ideal = mul(ideal, la.kernel_basis(g, p), p) if ideal.shape[1] else ideal
            if ideal.shape[1] == 0:
                break
        return ideal

    def is_semisimple(self) -> bool:
        return self.radical().shape[1] == 0

    def radical_power(self, k: int) -> np.ndarray:
        cur = la.eye(self.dim)
        for _ in range(k):
            cur = self.span_products(cur, self.radical()) if cur.shape[1] else cur
        return cur

    def loewy_length(self) -> int:
        k = 0
        while self.radical_power(k).shape[1]:
            k += 1
        return k

    def opposite(self) -> "Algebra":
        if self._op is None:
            op = Algebra(np.transpose(self.c, (1, 0, 2)), self.unit, self.p, self.labels,
                         name=f"{self.name}^op" if self.name else "", idempotents=self._hint,
                         vertex_labels=self._vertex_labels, check=False)
            op._op = self
            self._op = op
        return self._op

    # -- idempotents and projectives -----------------------------------------
    def primitive_idempotents(self) -> List[np.ndarray]:
        """A complete set of primitive orthogonal idempotents."""
        return self._memo("idempotents", self._primitive_idempotents)

    def _primitive_idempotents(self):
        if self._hint is not None and self._check_idempotents(self._hint):
            return list(self._hint)
        p, n = self.p, self.dim
        rad = self.radical()
        lift, project = la.quotient_basis(la.eye(n), rad, p)
        q = lift.shape[1]
        qc = np.zeros((q, q, q), dtype=DTYPE)
        for a in range(q):
            for b in range(q):
                qc[a, b] = mul(project, self.mul(lift[:, a], lift[:, b]).reshape(-1, 1), p)[:, 0]
        quot = Algebra(qc, mul(project, self.unit.reshape(-1, 1), p)[:, 0], p, check=False)
        bars = _split_semisimple(quot)
        out = []
        rest = self.unit.copy()
        for k, eb in enumerate(bars):
            if k == len(bars) - 1:
                out.append(rest)
                break
            a = mul(lift, eb.reshape(-1, 1), p)[:, 0]
            a = self.mul(self.mul(rest, a), rest)
            for _ in range(64):
                a2 = self.mul(a, a)
                if np.array_equal(a2, a):
                    break
                a = (3 * a2 - 2 * self.mul(a2, a)) % p
            else:
                raise AlgebraError("idempotent lifting did not converge")
            out.append(a)
            rest = (rest - a) % p
        if not self._check_idempotents(out):
            raise AlgebraError("idempotent lifting failure")
        return out

    def _check_idempotents(self, es) -> bool:
        p = self.p
        if not np.array_equal(np.sum(es, axis=0) % p, self.unit):
            return False
        for i, e in enumerate(es):
            for j, f in enumerate(es):
                prod = self.mul(e, f)
                want = e if i == j else np.zeros_like(e)
                if not np.array_equal(prod, want):
                    return False
        rad = self.radical()
        for e in es:
            ee = e.reshape(-1, 1)
            corner = self.span_products(self.span_products(ee, la.eye(self.dim)), ee)
            rcorner = self.span_products(self.span_products(ee, rad), ee) if rad.shape[1] else zeros(self.dim, 0)
            if corner.shape[1] - rcorner.shape[1] != 1:
                return False
        return True

    def proj_classes(self) -> List[ProjIndec]:
        """One indecomposable projective per isomorphism class of simples."""
        return self._memo("proj", self._proj_classes)

    def _proj_classes(self):
        p, n = self.p, self.dim
        es = self.primitive_idempotents()
        rad = self.radical()
        reps: List[np.ndarray] = []
        for e in es:
            fresh = True
            for r in reps:
                full = self.span_products(self.span_products(e.reshape(-1, 1), la.eye(n)), r.reshape(-1, 1))
                radp = self.span_products(self.span_products(e.reshape(-1, 1), rad), r.reshape(-1, 1)) \
                    if rad.shape[1] else zeros(n, 0)
                if full.shape[1] > radp.shape[1]:
                    fresh = False
                    break
            if fresh:
                reps.append(e)
        out = []
        labels = self._vertex_labels if self._vertex_labels and len(self._vertex_labels) == len(reps) else None
        for idx, e in enumerate(reps):
            vecs = np.array([self.mul(e, self.basis_vec(j)) for j in range(n)], dtype=DTYPE).T
            _, _, piv = la.rref(vecs, p)
            pi = ProjIndec(idx, e, list(piv))
            pi.label = labels[idx] if labels else str(idx + 1)
            out.append(pi)
        for pi in out:
            _build_proj_indec(self, pi)
        return out

    def proj_indecs(self) -> List["Module"]:
        return [pi.module for pi in self.proj_classes()]

    def simples(self) -> List["Module"]:
        return [pi.simple for pi in self.proj_classes()]

    def zero_module(self) -> "Module":
        return self._memo("zero", lambda: Module(self, [zeros(0, 0) for _ in range(self.dim)],
                                                   proj=[], name="0"))

    def regular(self) -> "Module":
        """Lambda as a right module over itself, presented as a projective."""
        return self._memo("regular", self._regular)

    def _regular(self):
        summands = []
        for e in self.primitive_idempotents():
            for pi in self.proj_classes():
                if self._same_class(e, pi.idempotent):
                    summands.append(pi.index)
                    break
        return projective_module(self, summands, name="Lambda")

    def _same_class(self, e, f) -> bool:
        n = self.dim
        rad = self.radical()
        full = self.span_products(self.span_products(e.reshape(-1, 1), la.eye(n)), f.reshape(-1, 1))
        radp = self.span_products(self.span_products(e.reshape(-1, 1), rad), f.reshape(-1, 1)) \
            if rad.shape[1] else zeros(n, 0)
        return full.shape[1] > radp.shape[1]

    def regular_module(self) -> "Module":
        """Lambda in its own basis (x -> x*b_a), not split into summands."""
        return Module(self, [self.right_matrix(self.basis_vec(a)) for a in range(self.dim)], name="Lambda")


def _int_matpow(m: np.ndarray, e: int, mod: int) -> np.ndarray:
    result = np.eye(m.shape[0], dtype=DTYPE)
    base = m % mod
    while e:
        if e & 1:
            result = (result @ base) % mod
        base = (base @ base) % mod
        e >>= 1
    return result


def _split_semisimple(alg: Algebra) -> List[np.ndarray]:
    """Primitive orthogonal idempotents of a split semisimple algebra."""
    import sympy

    p, n = alg.p, alg.dim
    rng = np.random.default_rng(0)
    x = sympy.Symbol("x")
    work = [alg.unit.copy()]
    done = []
    while work:
        e = work.pop(0)
        ee = e.reshape(-1, 1)
        corner = alg.span_products(alg.span_products(ee, la.eye(n)), ee)
        if corner.shape[1] == 1:
            done.append(e)
            continue
        candidates = [corner[:, i] for i in range(corner.shape[1])]
        candidates += [mul(corner, rng.integers(0, p, size=(corner.shape[1], 1)), p)[:, 0] for _ in range(200)]
        split = None
        for a in candidates:
            powers = [e]
            while True:
                nxt = alg.mul(powers[-1], a)
                stack = np.array(powers, dtype=DTYPE).T
                sol = la.solve(stack, nxt, p)
                if sol is not None:
                    break
                powers.append(nxt)
            coeffs = [1] + [int(-s) % p for s in sol[::-1]]
            poly = sympy.Poly(coeffs, x, modulus=p)
            factors = poly.factor_list()[1]
            if len(factors) < 2:
                continue
            pieces = []
            for f, m in factors:
                q = f ** m
                rest = sympy.Poly(poly.as_expr(), x, modulus=p).exquo(q)
                s, _, h = rest.gcdex(q)
                idem = (s * rest).rem(poly)
                val = np.zeros(n, dtype=DTYPE)
                for k, cf in enumerate(idem.all_coeffs()[::-1]):
                    val = (val + int(cf) * powers[k]) % p
                pieces.append(val)
            split = pieces
            break
        if split is None:
            raise NotSplitError("semisimple quotient has a non-split factor; not supported")
        work = split + work
    return done


def _build_proj_indec(alg: Algebra, pi: ProjIndec):
    p = alg.p
    vecs = np.array([alg.mul(pi.idempotent, alg.basis_vec(j)) for j in pi.span_idx], dtype=DTYPE).T
    li = la.LeftInverse(vecs, p)
    mats = []
    for a in range(alg.dim):
        ra = alg.right_matrix(alg.basis_vec(a))
        mats.append(li.coords(mul(ra, vecs, p)))
    mod = Module(alg, mats, proj=[pi.index], name=f"P{pi.label}")
    pi.module = mod
    pi.gen = li.coords(pi.idempotent)
    rad = mod.radical_basis()
    simple, top = quotient_module(mod, rad)
    simple.name = f"S{pi.label}"
    pi.simple = simple
    pi.top = top


# ---------------------------------------------------------------------------
# modules


class Module:
    """Finite-dimensional right module (column convention, see module doc)."""

    def __init__(self, algebra: Algebra, mats: Sequence[np.ndarray], check: bool = False,
                 proj: Optional[List[int]] = None, name: str = ""):
        self.algebra = algebra
        p = algebra.p
        self.mats = [np.array(m, dtype=DTYPE) % p for m in mats]
        if len(self.mats) != algebra.dim:
            raise AlgebraError("need one action matrix per basis element")
        self.dim = self.mats[0].shape[0] if self.mats else 0
        self.proj = proj          # summand class indices when projective by construction
        self.name = name
        self._stack = None
        if check:
            self.validate()

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim})"

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def action(self) -> List[np.ndarray]:
        """Row-convention action matrices."""
        return [m.T.copy() for m in self.mats]

    def act(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=DTYPE)
        if self.dim == 0:
            return zeros(0, 0)
        if self._stack is None:
            self._stack = np.array(self.mats)
        return np.einsum("i,ijk->jk", u, self._stack) % self.p

    def validate(self):
        alg, p = self.algebra, self.p
        if not np.array_equal(self.act(alg.unit), la.eye(self.dim)):
            raise AlgebraError("unit does not act as the identity")
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = self.act(alg.c[i, j])
                rhs = mul(self.mats[j], self.mats[i], p)
                if not np.array_equal(lhs, rhs):
                    raise AlgebraError(f"action fails on basis pair ({i},{j})")

    def is_projective_by_construction(self) -> bool:
        return self.proj is not None

    def radical_basis(self) -> np.ndarray:
        """Column basis of M * rad(Lambda)."""
        rad = self.algebra.radical()
        if self.dim == 0 or rad.shape[1] == 0:
            return zeros(self.dim, 0)
        blocks = [self.act(rad[:, k]) for k in range(rad.shape[1])]
        return la.image_basis(np.concatenate(blocks, axis=1), self.p)

    def socle_basis(self) -> np.ndarray:
        rad = self.algebra.radical()
        if self.dim == 0:
            return zeros(0, 0)
        if rad.shape[1] == 0:
            return la.eye(self.dim)
        stack = np.concatenate([self.act(rad[:, k]) for k in range(rad.shape[1])], axis=0)
        return la.kernel_basis(stack, self.p)

    def closure(self, vecs: np.ndarray) -> np.ndarray:
        """Column basis of the submodule generated by the columns of ``vecs``."""
        p = self.p
        if vecs.shape[1] == 0:
            return zeros(self.dim, 0)
        sub = la.image_basis(vecs, p)
        gens = self.algebra.generators()
        while True:
            more = [sub] + [mul(self.act(g), sub, p) for g in gens]
            new = la.image_basis(np.concatenate(more, axis=1), p)
            if new.shape[1] == sub.shape[1]:
                return sub
            sub = new


def projective_module(alg: Algebra, summands: List[int], name: str = "") -> Module:
    classes = alg.proj_classes()
    if not summands:
        return Module(alg, [zeros(0, 0) for _ in range(alg.dim)], proj=[], name=name or "0")
    blocks = [classes[s].module for s in summands]
    mats = []
    for a in range(alg.dim):
        mats.append(_block_diag([b.mats[a] for b in blocks]))
    return Module(alg, mats, proj=list(summands), name=name)


def _block_diag(ms: List[np.ndarray]) -> np.ndarray:
    r = sum(m.shape[0] for m in ms)
    c = sum(m.shape[1] for m in ms)
    out = zeros(r, c)
    i = j = 0
    for m in ms:
        out[i:i + m.shape[0], j:j + m.shape[1]] = m
        i += m.shape[0]
        j += m.shape[1]
    return out


def summand_offsets(mod: Module) -> List[int]:
    classes = mod.algebra.proj_classes()
    offs, o = [], 0
    for s in mod.proj:
        offs.append(o)
        o += classes[s].module.dim
    return offs


def proj_map(source: Module, target: Module, images: Sequence[np.ndarray]) -> np.ndarray:
    """The map from a projective ``source`` sending summand generators to ``images``.

    Each image is first multiplied by the summand's idempotent, which makes the
    assignment well defined.
    """
    alg = source.algebra
    classes = alg.proj_classes()
    p = alg.p
    out = zeros(target.dim, source.dim)
    for s, o, img in zip(source.proj, summand_offsets(source), images):
        pi = classes[s]
        n = mul(target.act(pi.idempotent), np.asarray(img, dtype=DTYPE).reshape(-1, 1), p)
        for t, j in enumerate(pi.span_idx):
            out[:, o + t] = mul(target.mats[j], n, p)[:, 0]
    return out


def generator_images(source: Module, f: np.ndarray) -> List[np.ndarray]:
    """Images of the summand generators of a projective ``source`` under ``f``."""
    classes = source.algebra.proj_classes()
    out = []
    for s, o in zip(source.proj, summand_offsets(source)):
        pi = classes[s]
        k = pi.module.dim
        out.append(mul(f[:, o:o + k], pi.gen.reshape(-1, 1), source.p)[:, 0])
    return out


def generator_vectors(source: Module) -> List[np.ndarray]:
    return generator_images(source, la.eye(source.dim))


def submodule(m: Module, basis: np.ndarray, name: str = ""):
    """Submodule spanned by closed columns ``basis``; returns (module, inclusion)."""
    p = m.p
    b = la.image_basis(basis, p) if basis.shape[1] else zeros(m.dim, 0)
    li = la.LeftInverse(b, p)
    mats = []
    for a in range(m.algebra.dim):
        img = mul(m.mats[a], b, p)
        if b.shape[1] and not li.contains(img):
            raise AlgebraError("subspace is not a submodule")
        mats.append(li.coords(img) if b.shape[1] else zeros(0, 0))
    return Module(m.algebra, mats, name=name), b


def quotient_module(m: Module, sub: np.ndarray, name: str = ""):
    """Quotient by a submodule given by columns; returns (module, projection)."""
    p = m.p
    lift, proj = la.quotient_basis(la.eye(m.dim), sub, p)
    mats = [mul(proj, mul(m.mats[a], lift, p), p) if lift.shape[1] else zeros(0, 0)
            for a in range(m.algebra.dim)]
    q = Module(m.algebra, mats, name=name)
    q._lift = lift
    return q, proj


def direct_sum(mods: Sequence[Module], name: str = "") -> Module:
    alg = mods[0].algebra
    mats = [_block_diag([m.mats[a] for m in mods]) for a in range(alg.dim)]
    proj = None
    if all(m.proj is not None for m in mods):
        proj = [s for m in mods for s in m.proj]
    return Module(alg, mats, proj=proj, name=name)


def socle(m: Module):
    """Socle as (module, inclusion matrix)."""
    return submodule(m, m.socle_basis(), name=f"soc({m.name})")


def socle_series(m: Module, n: int):
    """``[(soc^i M, inclusion into M) for i = 0..n]``."""
    if n < 0:
        raise ValueError("series length must be nonnegative")
    p = m.p
    out = []
    cur = zeros(m.dim, 0)
    for i in range(n + 1):
        sub, inc = submodule(m, cur, name=f"soc^{i}")
        out.append((sub, inc))
        if i == n:
            break
        q, proj = quotient_module(m, cur)
        s = q.socle_basis()
        lifted = mul(q._lift, s, p) if s.shape[1] else zeros(m.dim, 0)
        cur = la.image_basis(np.concatenate([cur, lifted], axis=1), p) if (cur.shape[1] + lifted.shape[1]) \
            else zeros(m.dim, 0)
    return out


def radical_submodule(m: Module):
    return submodule(m, m.radical_basis(), name=f"rad({m.name})")


def top_module(m: Module):
    return quotient_module(m, m.radical_basis(), name=f"top({m.name})")


# ---------------------------------------------------------------------------
# homs


def is_module_map(f: np.ndarray, m: Module, n: Module) -> bool:
    p = m.p
    if f.shape != (n.dim, m.dim):
        return False
    return all(np.array_equal(mul(f, m.mats[a], p), mul(n.mats[a], f, p)) for a in range(m.algebra.dim))


_HOM_CACHE: dict = {}


def module_hom(m: Module, n: Module) -> HomSpace:
    """All equivariant maps ``m -> n``."""
    if m.algebra is not n.algebra:
        raise AlgebraError("modules live over different algebras")
    key = (id(m), id(n))
    hit = _HOM_CACHE.get(key)
    if hit is not None and hit[0] is m and hit[1] is n:
        return hit[2]
    hs = _module_hom(m, n)
    if len(_HOM_CACHE) > 20000:
        _HOM_CACHE.clear()
    _HOM_CACHE[key] = (m, n, hs)
    return hs


def _module_hom(m: Module, n: Module) -> HomSpace:
    p = m.p
    if m.dim == 0 or n.dim == 0:
        basis = []
    elif m.proj is not None:
        basis = []
        classes = m.algebra.proj_classes()
        for k, s in enumerate(m.proj):
            ne = la.image_basis(n.act(classes[s].idempotent), p)
            for col in ne.T:
                imgs = [np.zeros(n.dim, dtype=DTYPE) for _ in m.proj]
                imgs[k] = col
                basis.append(proj_map(m, n, imgs))
    else:
        rows = []
        im, in_ = la.eye(m.dim), la.eye(n.dim)
        for g in m.algebra.generators():
            a, b = m.act(g), n.act(g)
            # row-major vec: vec(F A) = (I kron A^T) vec F, vec(B F) = (B kron I) vec F
            rows.append((np.kron(in_, a.T) - np.kron(b, im)) % p)
        sysm = np.concatenate(rows, axis=0) if rows else zeros(0, m.dim * n.dim)
        k = la.kernel_basis(sysm, p)
        basis = [k[:, j].reshape(n.dim, m.dim) for j in range(k.shape[1])]
    return _hom_from_basis(m, n, basis)


def _hom_from_basis(m: Module, n: Module, basis: List[np.ndarray]) -> HomSpace:
    p = m.p
    stack = np.array([b.reshape(-1) for b in basis], dtype=DTYPE).T if basis \
        else zeros(m.dim * n.dim, 0)
    li = la.LeftInverse(stack, p)

    def coords(f):
        return li.coords(np.asarray(f, dtype=DTYPE).reshape(-1))

    def element(c):
        return (stack @ c).reshape(n.dim, m.dim) % p if basis else zeros(n.dim, m.dim)

    hs = HomSpace(m, n, basis, coords, element, p, kind="module")
    hs.meta["stack"] = stack
    return hs


def lift_through(f: np.ndarray, g: np.ndarray, source: Module, middle: Module) -> Optional[np.ndarray]:
    """For projective ``source``, find ``h: source -> middle`` with ``g h = f``."""
    p = source.p
    classes = source.algebra.proj_classes()
    imgs = []
    for s, want in zip(source.proj, generator_images(source, f)):
        x = la.solve(g, want, p)
        if x is None:
            return None
        imgs.append(mul(middle.act(classes[s].idempotent), x.reshape(-1, 1), p)[:, 0])
    return proj_map(source, middle, imgs)


def projective_cover(m: Module):
    """Minimal surjection ``P -> m`` from a projective; returns (P, matrix)."""
    p = m.p
    alg = m.algebra
    if m.dim == 0:
        z = alg.zero_module()
        return z, zeros(0, 0)
    rad = m.radical_basis()
    chosen = rad
    summands, images = [], []
    for pi in alg.proj_classes():
        me = la.image_basis(m.act(pi.idempotent), p)
        for col in me.T:
            trial = np.concatenate([chosen, col.reshape(-1, 1)], axis=1)
            # chosen is independent, so a rank jump means col is new modulo the radical
            if la.rank(trial, p) > chosen.shape[1]:
                chosen = trial
                summands.append(pi.index)
                images.append(col)
    pmod = projective_module(alg, summands, name=f"P({m.name})" if m.name else "")
    return pmod, proj_map(pmod, m, images)


def is_projective(m: Module) -> bool:
    if m.proj is not None:
        return True
    pmod, _ = projective_cover(m)
    return pmod.dim == m.dim


def is_isomorphic(m: Module, n: Module, bound: int = 4096):
    """True / False, or None when the bounded search is inconclusive."""
    if m.dim != n.dim:
        return False
    if m.dim == 0:
        return True
    h1, h2 = module_hom(m, n), module_hom(n, m)
    if h1.dim == 0 or h2.dim == 0:
        return False
    p = m.p
    return find_invertible(h1, lambda f: la.rank(f, p) == m.dim, bound)


def find_invertible(space: HomSpace, test: Callable, bound: int = 4096, seed: int = 0):
    """Search combinations of the basis for one passing ``test``.

    Exhaustive when ``p**dim <= bound``; otherwise ``bound`` seeded random
    trials.  Returns the morphism, False when the exhaustive search failed,
    or None when a random search was inconclusive.
    """
    p, d = space.p, space.dim
    if d == 0:
        return False
    if p ** d <= bound:
        for c in itertools.product(range(p), repeat=d):
            if any(c):
                f = space.element(np.array(c))
                if test(f):
                    return f
        return False
    rng = np.random.default_rng(seed)
    for _ in range(bound):
        f = space.element(rng.integers(0, p, size=d))
        if test(f):
            return f
    return None


# ---------------------------------------------------------------------------
# duality and constructions


def k_dual(m: Module) -> Module:
    """``Hom_k(M, k)`` as a right module over the opposite algebra."""
    op = m.algebra.opposite()
    return Module(op, [a.T.copy() for a in m.mats], name=f"D({m.name})" if m.name else "")


def k_dual_map(f: np.ndarray) -> np.ndarray:
    return np.array(f, dtype=DTYPE).T.copy()


def truncated_poly(n: int, p: int = 2, name: str = "") -> Algebra:
    """``F_p[x]/(x^n)``."""
    c = np.zeros((n, n, n), dtype=DTYPE)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                c[i, j, i + j] = 1
    unit = np.zeros(n, dtype=DTYPE)
    unit[0] = 1
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
    return Algebra(c, unit, p, labels, name=name or (f"F{p}[x]/(x^{n})" if n > 1 else f"F{p}"),
                   idempotents=[unit], vertex_labels=["k"])


def path_algebra(n_vertices: int, arrows: Sequence, p: int = 2, name: str = "") -> Algebra:
    """Path algebra of an acyclic quiver; vertices ``1..n``, arrows ``(src, tgt)``.

    Paths multiply by concatenation ``p * q`` (first p, then q), so the right
    ideal ``e_v Lambda`` consists of the paths starting at ``v``.
    """
    arrows = [tuple(a) for a in arrows]
    for s, t in arrows:
        if not (1 <= s <= n_vertices and 1 <= t <= n_vertices):
            raise AlgebraError(f"arrow {s}->{t} leaves the vertex range")
    paths = [(v, v, ()) for v in range(1, n_vertices + 1)]
    frontier = [(s, t, (k,)) for k, (s, t) in enumerate(arrows)]
    while frontier:
        paths.extend(frontier)
        nxt = []
        for s, t, ws in frontier:
            for k, (s2, t2) in enumerate(arrows):
                if s2 == t:
                    nxt.append((s, t2, ws + (k,)))
        if len(paths) + len(nxt) > 2000:
            raise AlgebraError("quiver has oriented cycles or too many paths")
        frontier = nxt
    index = {(s, t, ws): i for i, (s, t, ws) in enumerate(paths)}
    n = len(paths)
    c = np.zeros((n, n, n), dtype=DTYPE)
    for i, (s1, t1, w1) in enumerate(paths):
        for j, (s2, t2, w2) in enumerate(paths):
            if t1 == s2:
                c[i, j, index[(s1, t2, w1 + w2)]] = 1
    unit = np.zeros(n, dtype=DTYPE)
    for v in range(n_vertices):
        unit[v] = 1
    names = [chr(ord("a") + k) if k < 26 else f"a{k}" for k in range(len(arrows))]
    labels = [f"e{s}" if not ws else "".join(names[k] for k in ws) for s, t, ws in paths]
    idem = []
    for v in range(n_vertices):
        e = np.zeros(n, dtype=DTYPE)
        e[v] = 1
        idem.append(e)
    return Algebra(c, unit, p, labels, name=name, idempotents=idem,
                   vertex_labels=[str(v) for v in range(1, n_vertices + 1)])


def linear_quiver(n: int, p: int = 2, name: str = "") -> Algebra:
    return path_algebra(n, [(i, i + 1) for i in range(1, n)], p, name=name or f"A{n}")


CORNERS = ((0, 0), (0, 1), (1, 1))


def triangular_algebra(alg: Algebra) -> Algebra:
    """Upper-triangular 2x2 matrices over ``alg``; basis index ``corner*dim + i``."""
    n = alg.dim
    big = 3 * n
    c = np.zeros((big, big, big), dtype=DTYPE)
    pos = {cn: k for k, cn in enumerate(CORNERS)}
    for k1, (a, b) in enumerate(CORNERS):
        for k2, (cc, d) in enumerate(CORNERS):
            if b != cc:
                continue
            k3 = pos[(a, d)]
            c[k1 * n:(k1 + 1) * n, k2 * n:(k2 + 1) * n, k3 * n:(k3 + 1) * n] = alg.c
    unit = np.zeros(big, dtype=DTYPE)
    unit[0:n] = alg.unit
    unit[2 * n:3 * n] = alg.unit
    labels = [f"{'11' if k == 0 else '12' if k == 1 else '22'}:{lab}" for k in range(3) for lab in alg.labels]
    idem, vlabels = [], []
    base = alg.primitive_idempotents()
    for k in (0, 2):
        for e in base:
            v = np.zeros(big, dtype=DTYPE)
            v[k * n:(k + 1) * n] = e
            idem.append(v)
    return Algebra(c, unit, alg.p, labels, name=f"T({alg.name})" if alg.name else "", idempotents=idem,
                   check=True)


def quotient_algebra(alg: Algebra, ideal: np.ndarray, name: str = ""):
    """``alg / I`` for a two-sided ideal given by columns; returns (algebra, projection)."""
    p = alg.p
    ib = la.image_basis(ideal, p) if ideal.shape[1] else zeros(alg.dim, 0)
    for side in (alg.span_products(ib, la.eye(alg.dim)), alg.span_products(la.eye(alg.dim), ib)):
        if side.shape[1] and not la.in_span(ib, side, p):
            raise AlgebraError("not a two-sided ideal")
    lift, proj = la.quotient_basis(la.eye(alg.dim), ib, p)
    q = lift.shape[1]
    c = np.zeros((q, q, q), dtype=DTYPE)
    for a in range(q):
        for b in range(q):
            c[a, b] = mul(proj, alg.mul(lift[:, a], lift[:, b]).reshape(-1, 1), p)[:, 0]
    unit = mul(proj, alg.unit.reshape(-1, 1), p)[:, 0]
    hint = None
    if alg._hint is not None:
        hint = [mul(proj, e.reshape(-1, 1), p)[:, 0] for e in alg._hint]
        hint = [e for e in hint if np.any(e)]
    out = Algebra(c, unit, p, name=name, idempotents=hint)
    return out, proj
