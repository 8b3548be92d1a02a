import itertools

import pytest

from seqcomp import catalog
from seqcomp.algebra import direct_sum, is_isomorphic, module_hom
from seqcomp.singularity import (is_self_injective, perfect_quotient_dim, projective_dimension, sg_hom,
                                 stable_hom, syzygy)

from helpers import residue_field


def test_stable_endomorphisms_of_residue_field():
    k = residue_field()
    assert module_hom(k, k).dim == 1
    assert stable_hom(k, k).dim == 1


@pytest.mark.parametrize("name", catalog.names())
def test_projective_source_is_stably_zero(name):
    alg = catalog.get(name)
    for pm in alg.proj_indecs():
        for n in catalog.module_pool(alg):
            assert stable_hom(pm, n).dim == 0


def test_semisimple_algebra_has_no_stable_homs():
    f2 = catalog.get("F2")
    s = f2.simples()[0]
    assert stable_hom(s, s).dim == 0


def test_syzygy_of_first_simple_over_path_algebra():
    a2 = catalog.get("A2")
    s1, s2 = a2.simples()
    om = syzygy(s1)[0]
    assert is_isomorphic(om, s2)


def test_self_injectivity():
    assert is_self_injective(catalog.get("D2"))
    assert is_self_injective(catalog.get("D3"))
    assert is_self_injective(catalog.get("F2"))
    assert not is_self_injective(catalog.get("A2"))
    assert not is_self_injective(catalog.get("T2"))


def test_projective_dimensions():
    a2 = catalog.get("A2")
    assert [projective_dimension(s, 4) for s in a2.simples()] == [1, 0]
    assert projective_dimension(residue_field(), 4) is None


@pytest.mark.parametrize("n", range(-3, 4))
def test_residue_field_is_periodic_in_singularity_category(n):
    k = residue_field()
    hs = sg_hom(k, k, n)
    assert hs.dim == 1
    assert hs.meta["certified"]


def test_finite_global_dimension_kills_singularity_homs():
    a2 = catalog.get("A2")
    pool = catalog.module_pool(a2)
    for m, n in itertools.product(pool, repeat=2):
        for s in (-1, 0, 1):
            hs = sg_hom(m, n, s)
            assert hs.dim == 0 and hs.meta["certified"]


def test_projective_input_vanishes_for_every_shift():
    d2 = catalog.get("D2")
    reg = d2.regular_module()
    assert all(sg_hom(reg, residue_field(), s).dim == 0 for s in range(-2, 3))


@pytest.mark.parametrize("name", ["D2", "D3"])
def test_stable_hom_is_perfect_quotient(name):
    alg = catalog.get(name)
    pool = catalog.module_pool(alg)
    for m, n in itertools.product(pool, repeat=2):
        total, ideal = perfect_quotient_dim(m, n)
        assert total - ideal == sg_hom(m, n, 0).dim


def test_syzygy_of_sum_is_sum_of_syzygies():
    d3 = catalog.get("D3")
    pool = catalog.module_pool(d3)
    m = direct_sum(pool[1:])
    assert syzygy(m)[0].dim == sum(syzygy(x)[0].dim for x in pool[1:])
