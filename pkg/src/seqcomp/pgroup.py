"""Finite abelian p-groups, their socle series, and colimits of injective sequences.

A group is ``sum Z/p^e`` given by its exponents.  A map is an integer matrix
with entry ``(i, j)`` read modulo ``p^{e_target(i)}``.  Sequences come from a
small set of generator rules, each carrying the data that lets a colimit be
classified from a finite horizon.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exactla import check_prime, rank


class PGroupError(ValueError):
    pass


class NotCauchyPG(PGroupError):
    pass


class HorizonInsufficient(PGroupError):
    pass


def valuation(x: int, p: int) -> int:
    """p-adic valuation; ``inf`` is reported as a large sentinel for 0."""
    if x == 0:
        return 1 << 30
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def snf_diagonal(m: np.ndarray, p: int, n: int) -> List[int]:
    """Valuations of the Smith form of ``m`` over ``Z/p^n``.

    The pivot is the entry of least valuation (first in row-major order), so
    the output is the sorted list of invariant valuations; entries equal to
    ``n`` stand for zero.
    """
    mod = p ** n
    a = [[int(x) % mod for x in row] for row in np.asarray(m, dtype=object).tolist()] if m.size else []
    rows = len(a)
    cols = len(a[0]) if rows else 0
    out: List[int] = []
    r0 = 0
    while r0 < min(rows, cols):
        best, bi, bj = n, -1, -1
        for i in range(r0, rows):
            for j in range(r0, cols):
                if a[i][j]:
                    v = valuation(a[i][j], p)
                    if v < best:
                        best, bi, bj = v, i, j
        if bi < 0:
            break
        a[r0], a[bi] = a[bi], a[r0]
        for row in a:
            row[r0], row[bj] = row[bj], row[r0]
        piv = a[r0][r0]
        unit = piv // p ** best
        inv = pow(unit, -1, mod)
        a[r0] = [(x * inv) % mod for x in a[r0]]
        # pivot is now p^best and divides everything remaining
        for i in range(rows):
            if i != r0 and a[i][r0]:
                q = a[i][r0] // p ** best
                a[i] = [(x - q * y) % mod for x, y in zip(a[i], a[r0])]
        for j in range(cols):
            if j != r0 and a[r0][j]:
                q = a[r0][j] // p ** best
                for i in range(rows):
                    a[i][j] = (a[i][j] - q * a[i][r0]) % mod
        out.append(best)
        r0 += 1
    return out


@dataclass(frozen=True)
class PGroup:
    p: int
    exponents: Tuple[int, ...]

    def __init__(self, p: int, exponents: Sequence[int] = ()):
        check_prime(p)
        exps = tuple(sorted(int(e) for e in exponents))
        if any(e <= 0 for e in exps):
            raise PGroupError("exponents must be positive")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "exponents", exps)

    def __repr__(self):
        if not self.exponents:
            return "0"
        return " + ".join(f"Z/{self.p}^{e}" if e > 1 else f"Z/{self.p}" for e in self.exponents)

    @property
    def log_order(self) -> int:
        return sum(self.exponents)

    @property
    def order(self) -> int:
        return self.p ** self.log_order

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def socle(self, i: int = 1) -> "PGroup":
        if i < 0:
            raise PGroupError("socle level must be nonnegative")
        return PGroup(self.p, [min(i, e) for e in self.exponents if min(i, e) > 0])

    def s_vector(self, k_max: int) -> List[int]:
        """``s_k`` = number of cyclic factors of exponent at least ``k``, for ``k = 1..k_max``."""
        return [sum(1 for e in self.exponents if e >= k) for k in range(1, k_max + 1)]


def cyclic(p: int, e: int) -> PGroup:
    return PGroup(p, [e])


class PGroupMap:
    def __init__(self, source: PGroup, target: PGroup, matrix, check: bool = True):
        if source.p != target.p:
            raise PGroupError("primes differ")
        self.source, self.target = source, target
        m = np.array(matrix, dtype=object).reshape(target.rank, source.rank)
        self.p = source.p
        for i, et in enumerate(target.exponents):
            for j in range(source.rank):
                m[i, j] = int(m[i, j]) % self.p ** et
        self.matrix = m
        if check:
            self.validate()

    def __repr__(self):
        return f"PGroupMap({self.source} -> {self.target})"

    def validate(self):
        p = self.p
        for i, et in enumerate(self.target.exponents):
            for j, es in enumerate(self.source.exponents):
                need = max(0, et - es)
                if self.matrix[i, j] % p ** need:
                    raise PGroupError(f"entry ({i},{j}) not divisible by {p}^{need}; map ill-defined")

    def compose_after(self, other: "PGroupMap") -> "PGroupMap":
        """``self o other``."""
        if other.target != self.source:
            raise PGroupError("maps are not composable")
        return PGroupMap(other.source, self.target, self.matrix.dot(other.matrix), check=False)

    def socle_matrix(self) -> np.ndarray:
        """Induced F_p-linear map on socles."""
        p = self.p
        s, t = self.source.exponents, self.target.exponents
        out = np.zeros((len(t), len(s)), dtype=np.int64)
        for i, et in enumerate(t):
            for j, es in enumerate(s):
                v = (p ** (es - 1) * int(self.matrix[i, j])) % p ** et
                out[i, j] = (v // p ** (et - 1)) % p
        return out

    def is_injective(self) -> bool:
        # a map of p-groups is injective iff it is injective on the socle
        return rank(self.socle_matrix(), self.p) == self.source.rank if self.source.rank else True

    def _coker_log_order(self, scale: int = 0) -> int:
        p = self.p
        t = self.target.exponents
        if not t:
            return 0
        n = max(t)
        f = np.array([[int(x) * p ** scale for x in row] for row in self.matrix.tolist()], dtype=object) \
            if self.source.rank else np.zeros((len(t), 0), dtype=object)
        d = np.diag([p ** e for e in t]).astype(object)
        both = np.concatenate([f.reshape(len(t), -1), d], axis=1)
        vals = snf_diagonal(both, p, n)
        return sum(min(v, n) for v in vals) + n * (len(t) - len(vals))

    def cokernel(self) -> PGroup:
        p = self.p
        t = self.target.exponents
        if not t:
            return PGroup(p)
        n = max(t)
        f = self.matrix if self.source.rank else np.zeros((len(t), 0), dtype=object)
        d = np.diag([p ** e for e in t]).astype(object)
        vals = snf_diagonal(np.concatenate([f.reshape(len(t), -1), d], axis=1), p, n)
        vals += [n] * (len(t) - len(vals))
        return PGroup(p, [v for v in vals if 0 < v])

    def image(self) -> PGroup:
        """Type of ``f(G)``: ``|p^k f(G)|`` from cokernel orders gives the s-vector."""
        p = self.p
        top = max(self.source.exponents, default=0)
        tlog = self.target.log_order
        logs = [tlog - self._coker_log_order(k) for k in range(top + 1)]
        exps = []
        for k in range(1, top + 1):
            count = (logs[k - 1] - logs[k]) - ((logs[k] - logs[k + 1]) if k < top else 0)
            exps += [k] * count
        return PGroup(p, exps)

    def kernel_log_order(self) -> int:
        return self.source.log_order - self.image().log_order


def identity_map(g: PGroup) -> PGroupMap:
    return PGroupMap(g, g, np.eye(g.rank, dtype=object), check=False)


def socle_series_pg(g: PGroup, n: int) -> List[Tuple[PGroup, PGroupMap]]:
    """``[(soc^i G, inclusion into G) for i = 0..n]``."""
    if n < 0:
        raise PGroupError("series length must be nonnegative")
    out = []
    for i in range(n + 1):
        s = g.socle(i)
        # factor with exponent e contributes Z/p^{min(i,e)} generated by p^{e - min(i,e)}
        cols = [j for j, e in enumerate(g.exponents) if min(i, e) > 0]
        m = np.zeros((g.rank, len(cols)), dtype=object)
        for k, j in enumerate(cols):
            m[j, k] = g.p ** (g.exponents[j] - min(i, g.exponents[j]))
        out.append((s, PGroupMap(s, g, m)))
    return out


# ---------------------------------------------------------------------------
# artinian types and sequences


@dataclass(frozen=True)
class ArtinianType:
    p: int
    finite_exponents: Tuple[int, ...] = ()
    pruefer_count: int = 0

    def __init__(self, p: int, finite_exponents: Sequence[int] = (), pruefer_count: int = 0):
        check_prime(p)
        if pruefer_count < 0 or any(e <= 0 for e in finite_exponents):
            raise PGroupError("invalid artinian type")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "finite_exponents", tuple(sorted(finite_exponents)))
        object.__setattr__(self, "pruefer_count", pruefer_count)

    def __repr__(self):
        parts = [str(PGroup(self.p, [e])) for e in self.finite_exponents] + [f"Z({self.p}^inf)"] * self.pruefer_count
        return " + ".join(parts) or "0"

    def socle(self, i: int) -> PGroup:
        return PGroup(self.p, [min(i, e) for e in self.finite_exponents if min(i, e)] + [i] * self.pruefer_count
                      if i > 0 else [])

    def to_dict(self) -> dict:
        return {"p": self.p, "finite_exponents": list(self.finite_exponents), "pruefer_count": self.pruefer_count}


@dataclass
class PGSeqCertificate:
    """What a generator rule knows about its tail.

    ``cauchy_from``: socle maps are bijective from this index on.
    ``stable_from``: from here the finite factors no longer grow and each
    Pruefer factor grows at every step where the underlying index advances.
    ``finite_top``: bound on the exponents of the finite factors; a Pruefer
    factor has exponent at least the index, so sorted chains stop crossing there.
    """

    cauchy_from: int
    stable_from: int
    pruefer: int
    canonical_growth: bool = True
    finite_top: int = 0


class PGroupSeq:
    """Lazy sequence ``X_0 -> X_1 -> ...`` of finite p-groups."""

    rule = "abstract"

    def __init__(self, p: int, cert: Optional[PGSeqCertificate], offset: int = 1, name: str = ""):
        self.p = p
        self.cert = cert
        self.offset = offset      # socle level of X_0 when the sequence is a socle series
        self.name = name or self.rule
        self._terms: Dict[int, PGroup] = {}
        self._maps: Dict[int, PGroupMap] = {}

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"

    def term(self, i: int) -> PGroup:
        if i not in self._terms:
            self._terms[i] = self._term(i)
        return self._terms[i]

    def map(self, i: int) -> PGroupMap:
        if i not in self._maps:
            self._maps[i] = self._map(i)
        return self._maps[i]

    def advances(self, i: int) -> bool:
        return True

    def _term(self, i):
        raise NotImplementedError

    def _map(self, i):
        raise NotImplementedError


def _mult_by_p_power(src: PGroup, dst: PGroup, k: int) -> PGroupMap:
    return PGroupMap(src, dst, np.diag([src.p ** k] * src.rank).astype(object).reshape(dst.rank, src.rank))


class CanonicalPruefer(PGroupSeq):
    """``Z/p -> Z/p^2 -> Z/p^3 -> ...`` by multiplication by p."""

    rule = "canonical-pruefer"

    def __init__(self, p: int):
        super().__init__(p, PGSeqCertificate(0, 0, 1), offset=1, name=f"canonical-pruefer({p})")

    def _term(self, i):
        return cyclic(self.p, i + 1)

    def _map(self, i):
        return PGroupMap(self.term(i), self.term(i + 1), [[self.p]])


class ConstantPG(PGroupSeq):
    rule = "constant"

    def __init__(self, g: PGroup):
        super().__init__(g.p, PGSeqCertificate(0, 0, 0, finite_top=max(g.exponents, default=0)), name=f"constant({g})")
        self.g = g

    def _term(self, i):
        return self.g

    def _map(self, i):
        return identity_map(self.g)


class DirectSumPG(PGroupSeq):
    rule = "direct-sum"

    def __init__(self, a: PGroupSeq, b: PGroupSeq):
        cert = None
        if a.cert and b.cert:
            top = max(a.cert.finite_top, b.cert.finite_top)
            stable = max(a.cert.stable_from, b.cert.stable_from)
            if a.cert.pruefer + b.cert.pruefer:
                # a growing summand may still sit below a finite one of the other part
                stable = max(stable, top)
            cert = PGSeqCertificate(max(a.cert.cauchy_from, b.cert.cauchy_from), stable,
                                    a.cert.pruefer + b.cert.pruefer,
                                    a.cert.canonical_growth and b.cert.canonical_growth, top)
        super().__init__(a.p, cert, offset=a.offset, name=f"direct-sum({a.name}, {b.name})")
        self.a, self.b = a, b
        # terms are stored sorted, so remember where each summand lands
        self._perm: Dict[int, List[int]] = {}

    def _parts(self, i):
        ea, eb = self.a.term(i).exponents, self.b.term(i).exponents
        tagged = sorted([(e, 0, k) for k, e in enumerate(ea)] + [(e, 1, k) for k, e in enumerate(eb)])
        return tagged

    def _term(self, i):
        return PGroup(self.p, [e for e, _, _ in self._parts(i)])

    def _map(self, i):
        src, dst = self._parts(i), self._parts(i + 1)
        ma, mb = self.a.map(i).matrix, self.b.map(i).matrix
        pos = {(s, k): r for r, (_, s, k) in enumerate(dst)}
        m = np.zeros((len(dst), len(src)), dtype=object)
        for c, (_, s, k) in enumerate(src):
            block = ma if s == 0 else mb
            for r2 in range(block.shape[0]):
                m[pos[(s, r2)], c] = block[r2, k]
        return PGroupMap(self.term(i), self.term(i + 1), m)


class SocleSeriesSeq(PGroupSeq):
    """``soc^0 A -> soc^1 A -> ...`` for an artinian type."""

    rule = "socle-series"

    def __init__(self, a: ArtinianType):
        top = max(a.finite_exponents, default=0)
        nonzero = bool(a.finite_exponents) or a.pruefer_count > 0
        super().__init__(a.p, PGSeqCertificate(1 if nonzero else 0, top, a.pruefer_count, finite_top=top), offset=0,
                         name=f"socle-series({a})")
        self.a = a
        self._kinds = [("f", e) for e in a.finite_exponents] + [("P", 0)] * a.pruefer_count

    def _layout(self, i):
        """Sorted (exponent, factor index) of the nonzero summands of soc^i A."""
        out = []
        for idx, (kind, e) in enumerate(self._kinds):
            x = i if kind == "P" else min(i, e)
            if x > 0:
                out.append((x, idx))
        return sorted(out)

    def _term(self, i):
        return PGroup(self.p, [x for x, _ in self._layout(i)])

    def _map(self, i):
        src, dst = self._layout(i), self._layout(i + 1)
        pos = {idx: r for r, (_, idx) in enumerate(dst)}
        m = np.zeros((len(dst), len(src)), dtype=object)
        for c, (x, idx) in enumerate(src):
            y = dst[pos[idx]][0]
            m[pos[idx], c] = self.p ** (y - x)
        return PGroupMap(self.term(i), self.term(i + 1), m)


class ReindexedPG(PGroupSeq):
    rule = "reindexed"

    def __init__(self, base: PGroupSeq, f: Callable[[int], int]):
        vals = [f(i) for i in range(65)]
        if any(v < i for i, v in enumerate(vals)) or any(b < a for a, b in zip(vals, vals[1:])):
            raise PGroupError("reindexing must satisfy f(i) >= i and be nondecreasing")
        cert = None
        if base.cert:
            first = lambda k: next(i for i in range(k + 1) if f(i) >= k)  # noqa: E731
            cert = PGSeqCertificate(first(base.cert.cauchy_from), first(base.cert.stable_from), base.cert.pruefer,
                                    base.cert.canonical_growth, base.cert.finite_top)
        super().__init__(base.p, cert, offset=base.offset, name=f"reindexed({base.name})")
        self.base, self.f = base, f

    def advances(self, i):
        return self.f(i + 1) > self.f(i)

    def _term(self, i):
        return self.base.term(self.f(i))

    def _map(self, i):
        a, b = self.f(i), self.f(i + 1)
        m = identity_map(self.base.term(a))
        for k in range(a, b):
            m = self.base.map(k).compose_after(m)
        return m


class PrefixPG(PGroupSeq):
    """Raw finite data; never certified."""

    rule = "prefix"

    def __init__(self, groups: Sequence[PGroup], maps: Sequence[PGroupMap]):
        super().__init__(groups[0].p, None, name="prefix")
        self.groups, self.maps_list = list(groups), list(maps)

    def _term(self, i):
        if i >= len(self.groups):
            raise HorizonInsufficient("finite prefix exhausted")
        return self.groups[i]

    def _map(self, i):
        if i >= len(self.maps_list):
            raise HorizonInsufficient("finite prefix exhausted")
        return self.maps_list[i]


def parse_rule(spec, p: Optional[int] = None) -> PGroupSeq:
    """Build a sequence from a rule description.

    Accepts dicts such as ``{"rule": "canonical-pruefer", "p": 2}``,
    ``{"rule": "constant", "p": 3, "exponents": [1, 2]}``,
    ``{"rule": "direct-sum", "parts": [..., ...]}``,
    ``{"rule": "socle-series", "p": 2, "finite_exponents": [1], "pruefer_count": 1}``,
    ``{"rule": "reindexed", "base": ..., "step": 2}`` (``f(i) = step * i + shift``)
    or ``{"rule": "prefix", "p": 2, "groups": [[1], [2]], "maps": [[[2]]]}``.
    """
    kind = spec["rule"]
    pp = spec.get("p", p)
    if kind == "canonical-pruefer":
        return CanonicalPruefer(pp)
    if kind == "constant":
        return ConstantPG(PGroup(pp, spec.get("exponents", [])))
    if kind == "direct-sum":
        parts = [parse_rule(s, pp) for s in spec["parts"]]
        out = parts[0]
        for q in parts[1:]:
            out = DirectSumPG(out, q)
        return out
    if kind == "socle-series":
        return SocleSeriesSeq(ArtinianType(pp, spec.get("finite_exponents", []), spec.get("pruefer_count", 0)))
    if kind == "reindexed":
        step, sh = int(spec.get("step", 1)), int(spec.get("shift", 0))
        return ReindexedPG(parse_rule(spec["base"], pp), lambda i: step * i + sh)
    if kind == "prefix":
        groups = [PGroup(pp, e) for e in spec["groups"]]
        maps = [PGroupMap(groups[k], groups[k + 1], m) for k, m in enumerate(spec["maps"])]
        return PrefixPG(groups, maps)
    raise PGroupError(f"unknown rule {kind!r}")


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class SocleStability:
    stable: bool
    failures: List[Tuple[int, int]] = field(default_factory=list)


def is_socle_stable(seq: PGroupSeq, horizon: int, offset: Optional[int] = None) -> SocleStability:
    """Check that ``X_i -> X_j`` identifies ``X_i`` with ``soc^{i+offset} X_j`` for ``i <= j <= horizon``."""
    off = seq.offset if offset is None else offset
    for i in range(horizon):
        if not seq.map(i).is_injective():
            raise PGroupError(f"map {i} is not injective")
    failures = []
    for i in range(horizon + 1):
        level = i + off
        comp = identity_map(seq.term(i))
        for j in range(i, horizon + 1):
            if j > i:
                comp = seq.map(j - 1).compose_after(comp)
            target_soc = seq.term(j).socle(level)
            # injective image inside soc^level of equal order is all of it
            inside = all(e <= level for e in seq.term(i).exponents)
            if not (inside and seq.term(i).log_order == target_soc.log_order):
                failures.append((i, j))
    return SocleStability(not failures, failures)


def cauchy_index(seq: PGroupSeq, horizon: int) -> int:
    """First index from which ``Hom(Z/p, -)`` maps are bijective through the horizon."""
    good = horizon
    for i in range(horizon - 1, -1, -1):
        m = seq.map(i)
        sm = m.socle_matrix()
        if m.source.rank != m.target.rank or (m.source.rank and rank(sm, seq.p) != m.source.rank):
            break
        good = i
    if good >= horizon and horizon > 0:
        raise NotCauchyPG(f"socle dimension not stable within horizon {horizon}")
    return good


def exponent_chains(seq: PGroupSeq, start: int, horizon: int) -> List[List[int]]:
    """Sorted exponent chains ``e_r(i)`` (largest first) for ``i = start..horizon``."""
    terms = [sorted(seq.term(i).exponents, reverse=True) for i in range(start, horizon + 1)]
    width = len(terms[0])
    if any(len(t) != width for t in terms):
        raise NotCauchyPG("socle dimension changes past the Cauchy index")
    return [[t[r] for t in terms] for r in range(width)]


def classify_colimit(seq: PGroupSeq, horizon: int) -> ArtinianType:
    c = cauchy_index(seq, horizon)
    if seq.cert is None:
        raise HorizonInsufficient("raw prefix: tails cannot be certified from finite data")
    if c > seq.cert.cauchy_from:
        raise PGroupError(f"empirical Cauchy index {c} exceeds certified {seq.cert.cauchy_from}")
    start = max(seq.cert.cauchy_from, seq.cert.stable_from)
    if start >= horizon:
        raise HorizonInsufficient(f"need a horizon beyond {start}")
    chains = exponent_chains(seq, start, horizon)
    steps = [i for i in range(start, horizon) if seq.advances(i)]
    growing, finite = 0, []
    for ch in chains:
        inc = [ch[i + 1 - start] - ch[i - start] for i in steps]
        if steps and all(d > 0 for d in inc):
            growing += 1
        elif all(v == ch[0] for v in ch):
            finite.append(ch[0])
        else:
            raise HorizonInsufficient("an exponent chain neither stabilizes nor grows at every step")
    if growing != seq.cert.pruefer or (growing and not seq.cert.canonical_growth):
        raise HorizonInsufficient(f"observed {growing} growing chains, certificate says {seq.cert.pruefer}")
    return ArtinianType(seq.p, finite, growing)


def random_artinian(rng: np.random.Generator, p: int, max_factors: int = 3, max_exp: int = 4,
                    max_pruefer: int = 2) -> ArtinianType:
    k = int(rng.integers(0, max_factors + 1))
    exps = [int(rng.integers(1, max_exp + 1)) for _ in range(k)]
    return ArtinianType(p, exps, int(rng.integers(0, max_pruefer + 1)))
