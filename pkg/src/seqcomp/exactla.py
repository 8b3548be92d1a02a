"""Exact linear algebra over prime fields.

Matrices are dense ``numpy`` integer arrays whose entries are residues in
``[0, p)``.  Every routine takes the modulus explicitly.  Pivoting is
deterministic (first column with a nonzero entry, lowest available row), so
bases returned here are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

DTYPE = np.int64


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    q = 3
    while q * q <= p:
        if p % q == 0:
            return False
        q += 2
    return True


def check_prime(p: int) -> int:
    if not is_prime(int(p)):
        raise ValueError(f"modulus {p} is not prime")
    return int(p)


@dataclass(frozen=True)
class Scalar:
    """A residue modulo a prime."""

    residue: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "residue", self.residue % self.p)

    def _other(self, other) -> int:
        if isinstance(other, Scalar):
            if other.p != self.p:
                raise ValueError("moduli differ")
            return other.residue
        return int(other)

    def __add__(self, other):
        return Scalar(self.residue + self._other(other), self.p)

    def __sub__(self, other):
        return Scalar(self.residue - self._other(other), self.p)

    def __mul__(self, other):
        return Scalar(self.residue * self._other(other), self.p)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.residue, self.p)

    def inverse(self) -> "Scalar":
        if self.residue == 0:
            raise ZeroDivisionError("zero has no inverse")
        return Scalar(pow(self.residue, self.p - 2, self.p), self.p)

    def __int__(self):
        return self.residue


def mat(rows, p: int, shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """Build a reduced matrix from nested lists (or an array)."""
    a = np.array(rows, dtype=DTYPE)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    return a % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=DTYPE)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % p


def rref(m: np.ndarray, p: int):
    """Reduced row-echelon form.

    Returns ``(rank, reduced, pivot_cols)``.
    """
    a = np.array(m, dtype=DTYPE) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    if p == 2:
        a = a.astype(np.uint8)
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        if p == 2:
            hits = np.flatnonzero(a[:, c])
            hits = hits[hits != r]
            if hits.size:
                a[hits, c:] ^= a[r, c:]
        else:
            piv = int(a[r, c])
            if piv != 1:
                a[r, c:] = (a[r, c:] * pow(piv, p - 2, p)) % p
            col = a[:, c].copy()
            col[r] = 0
            hits = np.flatnonzero(col)
            if hits.size:
                a[hits, c:] = (a[hits, c:] - np.outer(col[hits], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return r, a.astype(DTYPE), pivots


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    # eliminate along the shorter side
    if m.shape[0] > m.shape[1]:
        m = m.T
    return rref(m, p)[0]


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the right kernel of ``m``."""
    rows, cols = m.shape
    if rows == 0:
        return eye(cols)
    r, red, piv = rref(m, p)
    free = [c for c in range(cols) if c not in set(piv)]
    k = zeros(cols, len(free))
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, pc in enumerate(piv):
            k[pc, j] = (-red[i, f]) % p
    return k


def image_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Independent columns of ``m`` spanning its column space."""
    if m.shape[1] == 0:
        return zeros(m.shape[0], 0)
    _, _, piv = rref(m, p)
    return np.array(m[:, piv], dtype=DTYPE) % p


def solve(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Solve ``a x = b``; ``b`` may be a vector or a matrix of right-hand sides.

    Returns ``None`` when the system is inconsistent.
    """
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    if a.shape[0] != bb.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {bb.shape}")
    n = a.shape[1]
    if a.shape[0] == 0:
        x = zeros(n, bb.shape[1])
        return x[:, 0] if vec else x
    aug = np.concatenate([a % p, bb % p], axis=1)
    r, red, piv = rref(aug, p)
    if any(c >= n for c in piv):
        return None
    x = zeros(n, bb.shape[1])
    for i, c in enumerate(piv):
        x[c] = red[i, n:]
    return x[:, 0] if vec else x


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    x = solve(m, eye(n), p)
    if x is None or rank(m, p) != n:
        raise ValueError("matrix is singular")
    return x


def in_span(v: np.ndarray, w: np.ndarray, p: int) -> bool:
    """True when every column of ``w`` lies in the column span of ``v``."""
    if w.size == 0 or w.shape[1] == 0:
        return True
    if v.shape[1] == 0:
        return not np.any(w % p)
    return rank(np.concatenate([v, w], axis=1), p) == rank(v, p)


class LeftInverse:
    """Coordinates with respect to a full-column-rank basis.

    ``coords(x)`` returns ``c`` with ``basis @ c = x`` for ``x`` in the span;
    it reads only a fixed set of pivot rows, so it costs one small product.
    """

    def __init__(self, basis: np.ndarray, p: int):
        self.p = p
        self.basis = np.array(basis, dtype=DTYPE) % p
        n, k = self.basis.shape
        self.dim = k
        if k == 0:
            self.rows = []
            self.inv = zeros(0, 0)
            return
        r, _, piv = rref(self.basis.T, p)
        if r != k:
            raise ValueError("basis columns are dependent")
        self.rows = piv
        self.inv = inverse(self.basis[piv, :], p)

    def coords(self, x: np.ndarray) -> np.ndarray:
        if x.ndim == 1:
            return self.coords(x.reshape(-1, 1))[:, 0]
        if self.dim == 0:
            return zeros(0, x.shape[1])
        return mul(self.inv, x[self.rows], self.p)

    def contains(self, x: np.ndarray) -> bool:
        xx = x.reshape(-1, 1) if x.ndim == 1 else x
        return bool(np.array_equal(mul(self.basis, self.coords(xx), self.p), xx % self.p))


def quotient_basis(v: np.ndarray, w: np.ndarray, p: int):
    """Basis of span(v) / span(w).

    Returns ``(lift_basis, project)``: the columns of ``lift_basis`` are
    vectors of span(v) whose classes form a basis of the quotient, and
    ``project`` is a matrix sending an ambient vector of span(v) to its
    quotient coordinates (vectors of span(w) go to zero).
    """
    n = v.shape[0]
    if w.shape[0] != n:
        raise ValueError("ambient dimensions differ")
    if not in_span(v, w, p):
        raise ValueError("second space is not contained in the first")
    wb = image_basis(w, p) if w.shape[1] else zeros(n, 0)
    both = np.concatenate([wb, v % p], axis=1)
    _, _, piv = rref(both, p)
    lift_cols = [c - wb.shape[1] for c in piv if c >= wb.shape[1]]
    lift = np.array(v[:, lift_cols], dtype=DTYPE) % p
    full = np.concatenate([wb, lift], axis=1)
    q = lift.shape[1]
    if full.shape[1] == 0:
        return lift, zeros(0, n)
    li = LeftInverse(full, p)
    project = zeros(q, n)
    project[:, li.rows] = li.inv[wb.shape[1]:, :]
    return lift, project
