"""Named algebras and the module pools used for random sampling."""

from __future__ import annotations

from typing import Callable, Dict, List

import numpy as np

from . import exactla as la
from .algebra import Algebra, Module, linear_quiver, quotient_module, triangular_algebra, truncated_poly

_BUILDERS: Dict[str, Callable[[], Algebra]] = {
    "F2": lambda: truncated_poly(1, 2, name="F2"),
    "D2": lambda: truncated_poly(2, 2, name="D2"),
    "D3": lambda: truncated_poly(3, 2, name="D3"),
    "A2": lambda: linear_quiver(2, 2, name="A2"),
    "A3": lambda: linear_quiver(3, 2, name="A3"),
    "T2": lambda: _named(triangular_algebra(truncated_poly(1, 2)), "T2"),
}

DESCRIPTIONS = {
    "F2": "the prime field with two elements",
    "D2": "dual numbers F2[x]/(x^2)",
    "D3": "truncated polynomials F2[x]/(x^3)",
    "A2": "path algebra of 1 -> 2 over F2",
    "A3": "path algebra of 1 -> 2 -> 3 over F2",
    "T2": "upper-triangular 2x2 matrices over F2",
}

_CACHE: Dict[str, Algebra] = {}


def _named(alg: Algebra, name: str) -> Algebra:
    alg.name = name
    return alg


def names() -> List[str]:
    return list(_BUILDERS)


def get(name: str) -> Algebra:
    if name not in _BUILDERS:
        raise KeyError(f"unknown algebra {name!r}; known: {', '.join(_BUILDERS)}")
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]


def register(name: str, alg: Algebra) -> None:
    alg.name = name
    _CACHE[name] = alg
    _BUILDERS[name] = lambda: alg


def module_pool(alg: Algebra) -> List[Module]:
    """Indecomposable projectives, simples, and ``P / rad^2 P`` when it is neither."""
    return alg._memo("pool", lambda: _pool(alg))


def _pool(alg: Algebra) -> List[Module]:
    pool: List[Module] = []
    for pi in alg.proj_classes():
        m = pi.module
        pool += [m, pi.simple]
        rad = m.radical_basis()
        rad2 = _times_radical(m, rad)
        if 0 < rad2.shape[1] < rad.shape[1]:
            mid, _ = quotient_module(m, rad2, name=f"{m.name}/rad2")
            pool.append(mid)
    return pool


def _times_radical(m: Module, span: np.ndarray) -> np.ndarray:
    """Columns spanning ``span * J`` for a submodule given by columns."""
    p = m.p
    jb = m.algebra.radical()
    if span.shape[1] == 0 or jb.shape[1] == 0:
        return la.zeros(m.dim, 0)
    cols = [la.mul(m.act(jb[:, a]), span, p) for a in range(jb.shape[1])]
    return la.image_basis(np.concatenate(cols, axis=1), p)
