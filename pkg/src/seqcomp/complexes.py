"""Bounded cochain complexes of modules and chain maps.

Grading is cohomological: ``d^n: X^n -> X^{n+1}``.  ``shift(X, m)`` has
``(X[m])^n = X^{n+m}`` with differential ``(-1)^m d``; chain maps shift
without a sign.  The cone of ``f: X -> Y`` has ``cone^n = X^{n+1} + Y^n``
and differential ``[[-d_X, 0], [f, d_Y]]``.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence

import numpy as np

from . import exactla as la
from .algebra import (Algebra, Module, AlgebraError, direct_sum, is_module_map, module_hom,
                      quotient_module, submodule)
from .exactla import DTYPE, mul, zeros


class ComplexError(ValueError):
    pass


class Complex:
    """Modules ``X^lo .. X^hi`` with differentials; zero outside the window."""

    def __init__(self, algebra: Algebra, lo: int, modules: Sequence[Module],
                 diffs: Optional[Sequence[np.ndarray]] = None, check: bool = True, name: str = ""):
        self.algebra = algebra
        self.lo = int(lo)
        self.modules = list(modules)
        self.hi = self.lo + len(self.modules) - 1
        p = algebra.p
        if diffs is None:
            diffs = [zeros(self.modules[k + 1].dim, self.modules[k].dim) for k in range(len(self.modules) - 1)]
        self.diffs = [np.array(d, dtype=DTYPE) % p for d in diffs]
        if len(self.diffs) != max(0, len(self.modules) - 1):
            raise ComplexError("need one differential between consecutive terms")
        self.name = name
        self._cache: dict = {}
        if check:
            self.validate()

    def __repr__(self):
        dims = {n: self.module(n).dim for n in self.degrees() if self.module(n).dim}
        return f"Complex({self.name or '?'}, dims={dims})"

    @property
    def p(self) -> int:
        return self.algebra.p

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def module(self, n: int) -> Module:
        if self.lo <= n <= self.hi:
            return self.modules[n - self.lo]
        return self.algebra.zero_module()

    def dim(self, n: int) -> int:
        return self.module(n).dim

    def d(self, n: int) -> np.ndarray:
        """``d^n: X^n -> X^{n+1}``."""
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return zeros(self.dim(n + 1), self.dim(n))

    def total_dim(self) -> int:
        return sum(m.dim for m in self.modules)

    def support(self):
        """Lowest and highest degree with a nonzero term (None when zero)."""
        nz = [n for n in self.degrees() if self.dim(n)]
        return (nz[0], nz[-1]) if nz else None

    def is_projective(self) -> bool:
        return all(m.proj is not None or m.dim == 0 for m in self.modules)

    def validate(self):
        p = self.p
        for n in self.degrees():
            dn = self.d(n)
            if dn.shape != (self.dim(n + 1), self.dim(n)):
                raise ComplexError(f"differential in degree {n} has shape {dn.shape}")
            if self.dim(n) and self.dim(n + 1) and not is_module_map(dn, self.module(n), self.module(n + 1)):
                raise ComplexError(f"differential in degree {n} is not a module map")
            if np.any(mul(self.d(n + 1), dn, p)):
                raise ComplexError(f"d o d != 0 at degree {n}")


class ChainMap:
    """Degreewise module maps ``f^n: X^n -> Y^n`` (missing degrees are zero)."""

    def __init__(self, source: Complex, target: Complex, maps: Dict[int, np.ndarray], check: bool = True):
        self.source = source
        self.target = target
        p = source.p
        self.maps = {}
        for n, m in maps.items():
            if source.dim(n) and target.dim(n):
                m = np.array(m, dtype=DTYPE) % p
                if m.shape != (target.dim(n), source.dim(n)):
                    raise ComplexError(f"component in degree {n} has shape {m.shape}")
                self.maps[n] = m
        if check:
            self.validate()

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"

    def at(self, n: int) -> np.ndarray:
        m = self.maps.get(n)
        if m is None:
            return zeros(self.target.dim(n), self.source.dim(n))
        return m

    def degrees(self) -> range:
        return range(min(self.source.lo, self.target.lo) - 1, max(self.source.hi, self.target.hi) + 1)

    def validate(self):
        p = self.source.p
        x, y = self.source, self.target
        for n in self.degrees():
            if not np.array_equal(mul(y.d(n), self.at(n), p), mul(self.at(n + 1), x.d(n), p)):
                raise ComplexError(f"chain map fails to commute at degree {n}")
            if self.maps.get(n) is not None and not is_module_map(self.at(n), x.module(n), y.module(n)):
                raise ComplexError(f"component in degree {n} is not a module map")

    def is_zero(self) -> bool:
        return not any(np.any(m) for m in self.maps.values())

    def __add__(self, other: "ChainMap") -> "ChainMap":
        p = self.source.p
        keys = set(self.maps) | set(other.maps)
        return ChainMap(self.source, self.target, {n: (self.at(n) + other.at(n)) % p for n in keys}, check=False)

    def scale(self, c: int) -> "ChainMap":
        p = self.source.p
        return ChainMap(self.source, self.target, {n: (c * m) % p for n, m in self.maps.items()}, check=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def equals(self, other: "ChainMap") -> bool:
        keys = set(self.maps) | set(other.maps)
        return all(np.array_equal(self.at(n), other.at(n)) for n in keys)


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g o f``."""
    p = f.source.p
    out = {}
    for n, m in f.maps.items():
        gm = g.maps.get(n)
        if gm is not None:
            out[n] = mul(gm, m, p)
    return ChainMap(f.source, g.target, out, check=False)


def identity(x: Complex) -> ChainMap:
    return ChainMap(x, x, {n: la.eye(x.dim(n)) for n in x.degrees()}, check=False)


def zero_map(x: Complex, y: Complex) -> ChainMap:
    return ChainMap(x, y, {}, check=False)


def zero_complex(alg: Algebra) -> Complex:
    return Complex(alg, 0, [], check=False, name="0")


def stalk(m: Module, n: int = 0, name: str = "") -> Complex:
    return Complex(m.algebra, n, [m], [], check=False, name=name or (f"{m.name}[{-n}]" if n else m.name))


def stalk_map(f: np.ndarray, x: Complex, y: Complex, n: int = 0) -> ChainMap:
    return ChainMap(x, y, {n: f})


def direct_sum_complex(xs: Sequence[Complex], name: str = "") -> Complex:
    xs = [x for x in xs]
    alg = xs[0].algebra
    nonzero = [x for x in xs if x.modules]
    if not nonzero:
        return zero_complex(alg)
    lo = min(x.lo for x in nonzero)
    hi = max(x.hi for x in nonzero)
    mods = [direct_sum([x.module(n) for x in xs]) for n in range(lo, hi + 1)]
    diffs = [_block_diag([x.d(n) for x in xs]) for n in range(lo, hi)]
    return Complex(alg, lo, mods, diffs, check=False, name=name)


def _block_diag(ms):
    r = sum(m.shape[0] for m in ms)
    c = sum(m.shape[1] for m in ms)
    out = zeros(r, c)
    i = j = 0
    for m in ms:
        out[i:i + m.shape[0], j:j + m.shape[1]] = m
        i += m.shape[0]
        j += m.shape[1]
    return out


def sum_inclusion(xs: Sequence[Complex], total: Complex, k: int) -> ChainMap:
    """Inclusion of the k-th summand into ``direct_sum_complex(xs)``."""
    maps = {}
    for n in total.degrees():
        off = sum(x.dim(n) for x in xs[:k])
        m = zeros(total.dim(n), xs[k].dim(n))
        m[off:off + xs[k].dim(n), :] = la.eye(xs[k].dim(n))
        maps[n] = m
    return ChainMap(xs[k], total, maps, check=False)


def sum_projection(xs: Sequence[Complex], total: Complex, k: int) -> ChainMap:
    maps = {}
    for n in total.degrees():
        off = sum(x.dim(n) for x in xs[:k])
        m = zeros(xs[k].dim(n), total.dim(n))
        m[:, off:off + xs[k].dim(n)] = la.eye(xs[k].dim(n))
        maps[n] = m
    return ChainMap(total, xs[k], maps, check=False)


def sum_map(fs: Sequence[ChainMap], source: Complex, target: Complex) -> ChainMap:
    """Block-diagonal map between direct sums."""
    maps = {}
    for n in set(source.degrees()) | set(target.degrees()):
        maps[n] = _block_diag([f.at(n) for f in fs])
    return ChainMap(source, target, maps, check=False)


# ---------------------------------------------------------------------------
# shift and cone


def shift(x: Complex, m: int) -> Complex:
    """``Sigma^m X``: ``(X[m])^n = X^{n+m}``, differential ``(-1)^m d``."""
    if m == 0:
        return x
    key = ("shift", m)
    hit = x._cache.get(key)
    if hit is not None:
        return hit
    base, total = x, m
    # collapse nested shifts so that shift(shift(X, a), b) is shift(X, a + b)
    origin = x._cache.get("shift_of")
    if origin is not None:
        base, total = origin[0], origin[1] + m
        if total == 0:
            return base
        hit = base._cache.get(("shift", total))
        if hit is not None:
            x._cache[key] = hit
            return hit
    sign = -1 if total % 2 else 1
    out = Complex(base.algebra, base.lo - total, base.modules, [sign * d for d in base.diffs], check=False,
                  name=f"{base.name}[{total}]" if base.name else "")
    out._cache["shift_of"] = (base, total)
    base._cache[("shift", total)] = out
    x._cache[key] = out
    return out


def shift_map(f: ChainMap, m: int) -> ChainMap:
    if m == 0:
        return f
    return ChainMap(shift(f.source, m), shift(f.target, m), {n - m: a for n, a in f.maps.items()}, check=False)


class Cone:
    """Mapping cone with its canonical triangle maps."""

    def __init__(self, f: ChainMap):
        x, y = f.source, f.target
        self.map = f
        alg = x.algebra
        p = alg.p
        nonempty = [c for c in (shift(x, 1), y) if c.modules]
        if nonempty:
            lo = min(c.lo for c in nonempty)
            hi = max(c.hi for c in nonempty)
        else:
            lo, hi = 0, -1
        mods, diffs = [], []
        for n in range(lo, hi + 1):
            mods.append(direct_sum([x.module(n + 1), y.module(n)]))
        for n in range(lo, hi):
            a, b = x.dim(n + 1), y.dim(n)
            a2, b2 = x.dim(n + 2), y.dim(n + 1)
            dm = zeros(a2 + b2, a + b)
            dm[:a2, :a] = (-x.d(n + 1)) % p
            dm[a2:, :a] = f.at(n + 1)
            dm[a2:, a:] = y.d(n)
            diffs.append(dm)
        self.complex = Complex(alg, lo, mods, diffs, check=False,
                               name=f"cone({x.name}->{y.name})" if x.name and y.name else "")
        c = self.complex
        inc, pr = {}, {}
        for n in c.degrees():
            a, b = x.dim(n + 1), y.dim(n)
            i_m = zeros(a + b, b)
            i_m[a:, :] = la.eye(b)
            inc[n] = i_m
            p_m = zeros(a, a + b)
            p_m[:, :a] = la.eye(a)
            pr[n] = p_m
        self.inclusion = ChainMap(y, c, inc, check=False)            # Y -> cone
        self.projection = ChainMap(c, shift(x, 1), pr, check=False)  # cone -> Sigma X


def cone(f: ChainMap) -> Complex:
    return Cone(f).complex


def cone_map(c1: Cone, c2: Cone, a: ChainMap, b: ChainMap, h: Optional[Dict[int, np.ndarray]] = None) -> ChainMap:
    """Map of cones induced by a square ``b f1 - f2 a = d h + h d``.

    ``h`` (components ``X1^n -> Y2^{n-1}``) may be omitted for strict squares.
    In degree n the map is ``[[a^{n+1}, 0], [h^{n+1}, b^n]]``.
    """
    x1, y1 = c1.map.source, c1.map.target
    x2, y2 = c2.map.source, c2.map.target
    p = x1.p
    maps = {}
    for n in set(c1.complex.degrees()) | set(c2.complex.degrees()):
        a1, b1 = x1.dim(n + 1), y1.dim(n)
        a2, b2 = x2.dim(n + 1), y2.dim(n)
        m = zeros(a2 + b2, a1 + b1)
        m[:a2, :a1] = a.at(n + 1)
        if h is not None and (n + 1) in h:
            m[a2:, :a1] = h[n + 1] % p
        m[a2:, a1:] = b.at(n)
        maps[n] = m
    return ChainMap(c1.complex, c2.complex, maps, check=False)


# ---------------------------------------------------------------------------
# truncations and cohomology


def brutal_truncate_geq(x: Complex, n: int):
    """``sigma_{>=n} X`` with its inclusion into ``X``."""
    key = ("sigma", n)
    hit = x._cache.get(key)
    if hit is not None:
        return hit
    if n <= x.lo:
        out = (x, identity(x))
    elif n > x.hi:
        z = zero_complex(x.algebra)
        out = (z, zero_map(z, x))
    else:
        t = Complex(x.algebra, n, x.modules[n - x.lo:], x.diffs[n - x.lo:], check=False)
        out = (t, ChainMap(t, x, {k: la.eye(x.dim(k)) for k in t.degrees()}, check=False))
    x._cache[key] = out
    return out


def _cycles(x: Complex, n: int):
    """Column basis of ker d^n inside X^n."""
    if x.dim(n) == 0:
        return zeros(0, 0)
    if x.dim(n + 1) == 0:
        return la.eye(x.dim(n))
    return la.kernel_basis(x.d(n), x.p)


def _boundaries(x: Complex, n: int):
    if x.dim(n - 1) == 0 or x.dim(n) == 0:
        return zeros(x.dim(n), 0)
    return la.image_basis(x.d(n - 1), x.p)


class CohomologyData:
    """``H^n`` with witnesses: cycles ``Z``, projection ``Z-coords -> H``, lifts ``H -> X^n``."""

    def __init__(self, x: Complex, n: int):
        p = x.p
        self.degree = n
        zb = _cycles(x, n)
        bb = _boundaries(x, n)
        self.cycles = zb
        zmod, _ = submodule(x.module(n), zb) if zb.shape[1] else (x.algebra.zero_module(), zb)
        self.zli = la.LeftInverse(zb, p)
        bz = self.zli.coords(bb) if bb.shape[1] else zeros(zb.shape[1], 0)
        if zb.shape[1]:
            self.module, self.project = quotient_module(zmod, bz)
            self.lifts = mul(zb, self.module._lift, p) if self.module.dim else zeros(x.dim(n), 0)
        else:
            self.module, self.project = x.algebra.zero_module(), zeros(0, 0)
            self.lifts = zeros(x.dim(n), 0)

    def classify(self, v: np.ndarray) -> np.ndarray:
        """Cohomology coordinates of cycle(s) ``v`` in ``X^n``."""
        if self.module.dim == 0:
            return zeros(0, v.shape[1] if v.ndim == 2 else 1)
        return mul(self.project, self.zli.coords(v if v.ndim == 2 else v.reshape(-1, 1)), self.zli.p)


def cohomology_data(x: Complex, n: int) -> CohomologyData:
    key = ("H", n)
    if key not in x._cache:
        x._cache[key] = CohomologyData(x, n)
    return x._cache[key]


def cohomology(x: Complex, n: int) -> Module:
    return cohomology_data(x, n).module


def cohomology_dims(x: Complex) -> Dict[int, int]:
    return {n: cohomology(x, n).dim for n in x.degrees()}


def cohomology_window(x: Complex):
    """(lowest, highest) degree with nonzero cohomology, or None if acyclic."""
    nz = [n for n in x.degrees() if cohomology(x, n).dim]
    return (nz[0], nz[-1]) if nz else None


def is_acyclic(x: Complex) -> bool:
    return cohomology_window(x) is None


def induced_on_cohomology(f: ChainMap, n: int) -> np.ndarray:
    hx = cohomology_data(f.source, n)
    hy = cohomology_data(f.target, n)
    if hx.module.dim == 0 or hy.module.dim == 0:
        return zeros(hy.module.dim, hx.module.dim)
    return hy.classify(mul(f.at(n), hx.lifts, f.source.p))


def is_quasi_iso(f: ChainMap) -> bool:
    for n in set(f.source.degrees()) | set(f.target.degrees()):
        h = induced_on_cohomology(f, n)
        if h.shape[0] != h.shape[1] or la.rank(h, f.source.p) != h.shape[0]:
            return False
    return True


def tau_leq(x: Complex, n: int):
    """``tau_{<=n} X`` (subcomplex ending in ker d^n) with its inclusion into X."""
    p = x.p
    if n >= x.hi:
        return x, identity(x)
    if n < x.lo:
        z = zero_complex(x.algebra)
        return z, zero_map(z, x)
    zb = _cycles(x, n)
    zmod, _ = submodule(x.module(n), zb) if zb.shape[1] else (x.algebra.zero_module(), zb)
    li = la.LeftInverse(zb, p)
    mods = [x.module(k) for k in range(x.lo, n)] + [zmod]
    diffs = [x.d(k) for k in range(x.lo, n - 1)]
    if n - 1 >= x.lo:
        diffs.append(li.coords(x.d(n - 1)) if zb.shape[1] else zeros(0, x.dim(n - 1)))
    t = Complex(x.algebra, x.lo, mods, diffs, check=False)
    maps = {k: la.eye(x.dim(k)) for k in range(x.lo, n)}
    maps[n] = zb
    return t, ChainMap(t, x, maps, check=False)


def tau_gt(x: Complex, n: int):
    """``tau_{>n} X = X / tau_{<=n} X`` with the projection from X."""
    p = x.p
    if n >= x.hi:
        z = zero_complex(x.algebra)
        return z, zero_map(x, z)
    if n < x.lo:
        return x, identity(x)
    zb = _cycles(x, n)
    q, proj = quotient_module(x.module(n), zb)
    mods = [q] + [x.module(k) for k in range(n + 1, x.hi + 1)]
    first = mul(x.d(n), q._lift, p) if q.dim else zeros(x.dim(n + 1), 0)
    diffs = [first] + [x.d(k) for k in range(n + 1, x.hi)]
    t = Complex(x.algebra, n, mods, diffs, check=False)
    t._cache["tau_gt_proj"] = proj
    maps = {k: la.eye(x.dim(k)) for k in range(n + 1, x.hi + 1)}
    maps[n] = proj
    return t, ChainMap(x, t, maps, check=False)


def tau_gt_map(f: ChainMap, n: int) -> ChainMap:
    """``tau_{>n}(f)``."""
    p = f.source.p
    sx, px = tau_gt(f.source, n)
    sy, py = tau_gt(f.target, n)
    maps = {}
    for k in set(sx.degrees()) | set(sy.degrees()):
        if k < n:
            continue
        if k == n:
            qx = sx.module(n) if sx.modules else None
            if qx is None or qx.dim == 0 or sy.dim(n) == 0:
                continue
            maps[k] = mul(py.at(n), mul(f.at(n), qx._lift, p), p)
        else:
            maps[k] = f.at(k)
    return ChainMap(sx, sy, maps, check=False)


# ---------------------------------------------------------------------------
# random sampling


def random_chain_map(x: Complex, y: Complex, rng: np.random.Generator) -> ChainMap:
    """A uniformly random chain map, from the kernel of the commuting system."""
    from .derived import chain_map_space
    basis = chain_map_space(x, y)
    if not basis:
        return zero_map(x, y)
    c = rng.integers(0, x.p, size=len(basis))
    out = zero_map(x, y)
    for ci, b in zip(c, basis):
        if ci:
            out = out + b.scale(int(ci))
    return out


def random_complex(alg: Algebra, rng: np.random.Generator, pool: Sequence[Module], max_total_dim: int = 12,
                   degrees: Sequence[int] = (-2, -1, 0, 1, 2), max_len: int = 3) -> Complex:
    """Random bounded complex drawn from ``pool`` with random differentials.

    Each new differential is a random element of the homs killing the previous
    one, so ``d o d = 0`` by construction.
    """
    p = alg.p
    for _ in range(100):
        length = int(rng.integers(1, max_len + 1))
        lo = int(rng.choice(list(degrees)[:max(1, len(degrees) - length + 1)]))
        mods, total = [], 0
        for _k in range(length):
            choices = [m for m in pool if total + m.dim <= max_total_dim]
            if not choices:
                break
            m = choices[int(rng.integers(0, len(choices)))]
            if rng.random() < 0.3:
                m2 = choices[int(rng.integers(0, len(choices)))]
                if total + m.dim + m2.dim <= max_total_dim:
                    m = direct_sum([m, m2])
            mods.append(m)
            total += m.dim
        if not mods:
            continue
        diffs = []
        for k in range(len(mods) - 1):
            hs = module_hom(mods[k], mods[k + 1])
            if hs.dim == 0:
                diffs.append(zeros(mods[k + 1].dim, mods[k].dim))
                continue
            if k == 0:
                allowed = la.eye(hs.dim)
            else:
                prev = diffs[-1]
                rows = np.array([mul(b, prev, p).reshape(-1) for b in hs.basis], dtype=DTYPE).T
                allowed = la.kernel_basis(rows, p)
            if allowed.shape[1] == 0:
                diffs.append(zeros(mods[k + 1].dim, mods[k].dim))
                continue
            c = mul(allowed, rng.integers(0, p, size=(allowed.shape[1], 1)), p)[:, 0]
            diffs.append(hs.element(c))
        return Complex(alg, lo, mods, diffs)
    raise ComplexError("could not sample a complex within the size budget")
