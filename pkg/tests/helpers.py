"""Small shared constructions for the test modules."""

import numpy as np

from seqcomp import catalog
from seqcomp import exactla as la
from seqcomp.algebra import module_hom
from seqcomp.complexes import stalk, stalk_map


def dual_numbers():
    return catalog.get("D2")


def x_map():
    """Multiplication by x on the regular D2 module, as a map of degree-0 stalks."""
    d2 = dual_numbers()
    reg = d2.regular_module()
    f = next(g for g in module_hom(reg, reg).basis if la.rank(g, 2) == 1)
    s = stalk(reg, 0, name="L")
    return stalk_map(f, s, s, 0)


def residue_field(alg=None):
    alg = alg or dual_numbers()
    return alg.simples()[0]


def seeded(seed):
    return np.random.default_rng(seed)
