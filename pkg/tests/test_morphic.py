import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seqcomp import catalog
from seqcomp.complexes import Cone, is_acyclic, shift, stalk
from seqcomp.derived import khom
from seqcomp.morphic import (MorphicError, adjunction_check, build_sample, cone_compat_check, converter_check,
                             cross_validate, epivalence_check, find_iso_T, from_lambda1, functor_P, functor_Q,
                             is_iso_T, is_iso_T1, lambda1, morphic_completion_check, recollement_check, round_trip,
                             shift_periodicity_check, square_zero_check, standard_triangle, standard_triangle_check,
                             t1_compose, t1_hom, t1_identity, to_lambda1)

from helpers import x_map

SMALL = ["F2", "D2"]


def regular_stalk(name):
    return stalk(catalog.get(name).regular_module(), 0, name="L")


@pytest.fixture(scope="module", params=SMALL)
def sample(request):
    return build_sample(catalog.get(request.param), rng=np.random.default_rng(0))


@pytest.mark.parametrize("name", SMALL)
def test_triangular_algebra_is_three_times_larger(name):
    alg = catalog.get(name)
    assert lambda1(alg).dim == 3 * alg.dim


@pytest.mark.parametrize("name", SMALL)
def test_projectives_of_triangular_algebra(name):
    alg = catalog.get(name)
    first, second = lambda1(alg).proj_classes()
    top = from_lambda1(stalk(first.module, 0), alg)
    bottom = from_lambda1(stalk(second.module, 0), alg)
    # e1 gives the identity of the regular module, e2 the zero map into it
    assert top.x1.total_dim() == top.x0.total_dim() == alg.dim
    assert is_iso_T(top.alpha)
    assert bottom.x1.total_dim() == 0 and bottom.x0.total_dim() == alg.dim


@pytest.mark.parametrize("name", SMALL)
def test_p_of_q_gives_shifts(name):
    m = regular_stalk(name)
    assert find_iso_T(functor_P(-1, functor_Q(1, m)), shift(m, 1)) not in (False, None)
    assert find_iso_T(functor_P(2, functor_Q(-1, m)), shift(m, -1)) not in (False, None)


def test_unsupported_functor_index_raises():
    m = regular_stalk("F2")
    with pytest.raises(MorphicError, match="Sigma"):
        functor_Q(2, m)
    with pytest.raises(MorphicError, match="Sigma"):
        functor_P(3, functor_Q(0, m))


def test_standard_triangle_of_identity_pair():
    m = regular_stalk("D2")
    a, i, q = standard_triangle(functor_Q(0, m))
    assert is_iso_T(a)
    assert is_acyclic(i.target)


def test_standard_triangle_of_pair_into_zero():
    m = regular_stalk("D2")
    z = functor_Q(1, m)
    assert functor_P(1, z).total_dim() == 2 and functor_P(0, z).total_dim() == 0
    _, _, q = standard_triangle(z)
    assert is_iso_T(q)


def test_cone_of_multiplication_pair():
    f = x_map()
    from seqcomp.morphic import pair
    z = pair(f, "x")
    c = functor_P(-1, z)
    assert khom(c, c).dim == khom(Cone(f).complex, Cone(f).complex).dim


def test_round_trips_are_isomorphisms(sample):
    for z in sample.pairs:
        fwd, back = round_trip(z)
        assert fwd.check() and back.check()
        assert is_iso_T1(fwd)
        ident = t1_compose(back, fwd)
        h = t1_hom(z, z)
        assert np.array_equal(h.coords(ident), h.coords(t1_identity(z)))


def test_checks_on_small_samples(sample):
    for rep in (converter_check(sample), cross_validate(sample), epivalence_check(sample),
                square_zero_check(sample), standard_triangle_check(sample), adjunction_check(sample),
                recollement_check(sample), shift_periodicity_check(-1, sample), shift_periodicity_check(0, sample),
                cone_compat_check(sample, np.random.default_rng(1), 10)):
        assert rep.passed, (rep.name, rep.failures[:3])
        assert rep.checked > 0


def test_periodicity_on_zero_object_is_trivial():
    from seqcomp.complexes import zero_complex
    from seqcomp.morphic import Sample
    alg = catalog.get("F2")
    s = Sample(alg, [zero_complex(alg)], [functor_Q(0, regular_stalk("F2"))], [])
    assert shift_periodicity_check(0, s).passed


def test_completion_check_over_prime_field():
    rep = morphic_completion_check(catalog.get("F2"))
    assert rep.passed, rep.failures


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 1000))
def test_pair_homs_agree_with_triangular_algebra(name, seed):
    alg = catalog.get(name)
    s = build_sample(alg, rng=np.random.default_rng(seed), max_pairs=4)
    for x in s.pairs:
        for y in s.pairs:
            assert t1_hom(x, y).dim == khom(to_lambda1(x), to_lambda1(y)).dim
