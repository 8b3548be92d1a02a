import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seqcomp import catalog
from seqcomp import exactla as la
from seqcomp.complexes import (cone, identity, is_acyclic, random_chain_map, random_complex, stalk, zero_map)
from seqcomp.completion import (AlternatingSeq, NotCauchy, Tower, check_triangle, colim_hom, completion_hom,
                                constant, fraction_case, is_cauchy, lf3_case, ml_lim1, phantomless_check,
                                realize, reindex, scaling_tower, seq_cone, seq_identity, seq_zero, shifted,
                                trunc_morphism, truncation_sequence)
from seqcomp.derived import dbhom, khom

from helpers import dual_numbers, residue_field, seeded, x_map


def k_seq():
    return truncation_sequence(stalk(residue_field(), 0, name="k"))


def lam_stalk(j=0):
    return stalk(dual_numbers().regular_module(), j, name=f"L[{-j}]")


def test_truncation_of_projective_is_constant():
    seq = truncation_sequence(lam_stalk())
    assert all(seq.term(i).total_dim() == 2 for i in range(4))
    assert seq.transition(2).equals(identity(seq.term(2)))


def test_truncation_of_residue_field_grows_by_one_term():
    seq = k_seq()
    for i in range(4):
        t = seq.term(i)
        assert sum(1 for n in t.degrees() if t.dim(n)) == i + 1


def test_constant_sequence_is_cauchy_from_the_start():
    c = constant(cone(x_map()))
    rep = is_cauchy(c, [lam_stalk(j) for j in range(-2, 3)], 4)
    assert set(rep.indices.values()) == {0}


@pytest.mark.parametrize("j", [-2, -1, 0, 1, 2])
def test_residue_sequence_stabilizes_within_bound(j):
    # lam_stalk(-j) is the regular module shifted by j
    rep = is_cauchy(k_seq(), [lam_stalk(-j)], 8)
    (n_c,) = rep.indices.values()
    (cert,) = rep.certified.values()
    assert n_c <= cert <= max(0, j + 2)


def test_alternating_rule_is_rejected():
    with pytest.raises(NotCauchy):
        is_cauchy(AlternatingSeq(lam_stalk()), [lam_stalk()], 4)


def test_colimit_hom_from_regular_stalk():
    assert colim_hom(lam_stalk(), k_seq()).dim == 1


def test_colimit_hom_from_window_of_resolution():
    seq = k_seq()
    c = seq.term(1)
    h = colim_hom(c, seq)
    assert h.dim == khom(c, seq.term(3)).dim


def test_completion_hom_of_constants_is_khom():
    x = cone(x_map())
    assert completion_hom(constant(x), constant(x)).dim == khom(x, x).dim


def test_endomorphisms_and_first_extension_of_residue_field():
    seq = k_seq()
    assert completion_hom(seq, seq).dim == 1
    assert completion_hom(seq, shifted(seq, 1)).dim == 1
    assert completion_hom(seq, shifted(seq, -1)).dim == 0


def test_reindex_by_identity_gives_identity_morphism():
    seq = k_seq()
    xf, fx = reindex(seq, lambda i: i)
    for i in range(3):
        assert fx.at(i).equals(identity(seq.term(i)))


def test_surjective_tower_vanishes():
    t = Tower("fd", lambda i: 2, lambda i: la.eye(2), p=2, stable_from=0)
    assert ml_lim1(t, 5).status == "vanishes"


def test_doubling_tower_fails_mittag_leffler():
    v = ml_lim1(scaling_tower(2), 6)
    assert v.status == "ML-fails"
    assert v.witness["image_indices"] == [2 ** k for k in range(1, 7)]


def test_uncertified_doubling_tower_is_unknown():
    assert ml_lim1(scaling_tower(2, certified=False), 6).status == "unknown"


def test_phantomless_constant_sequences():
    c = constant(cone(x_map()))
    assert {v.status for v in phantomless_check(c, c, range(-2, 3)).values()} == {"vanishes"}


def test_phantomless_over_dual_numbers():
    seq = k_seq()
    out = phantomless_check(seq, seq, range(-3, 4))
    assert {v.status for v in out.values()} == {"vanishes"}
    for s, v in out.items():
        assert v.certificate["bijective_from"] <= abs(s) + 2


def test_phantomless_over_path_algebra():
    a2 = catalog.get("A2")
    seqs = [truncation_sequence(stalk(s, 0)) for s in a2.simples()]
    for x in seqs:
        for y in seqs:
            assert {v.status for v in phantomless_check(x, y, range(-2, 3)).values()} == {"vanishes"}


def test_cone_of_identity_is_contractible():
    seq = k_seq()
    tri = seq_cone(seq_identity(seq))
    for i in range(4):
        assert is_acyclic(tri.z.term(i))


def test_cone_of_zero_is_termwise_sum():
    seq = k_seq()
    tri = seq_cone(seq_zero(seq, seq))
    t = tri.z.term(2)
    assert t.total_dim() == 2 * seq.term(2).total_dim()


def test_cone_of_multiplication_matches_derived_cone():
    f = x_map()
    for test in (lam_stalk(), stalk(residue_field(), 0)):
        rep = check_triangle(f, test)
        assert rep.passed, rep.detail


def test_realize_recovers_cohomology():
    seq = k_seq()
    real = realize(seq, (0, 0))
    from seqcomp.complexes import cohomology_dims
    assert cohomology_dims(real).get(0, 0) == 1


def test_fraction_calculus_on_multiplication():
    f = x_map()
    case = fraction_case(f, f, (1, 2), "x")
    assert case.passed


def test_lf3_on_residue_field():
    case = lf3_case(lam_stalk(), k_seq(), seeded(3), "lf3")
    assert case is not None and case.passed


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(catalog.names()), st.integers(0, 10_000))
def test_completion_of_constants_is_fully_faithful(name, seed):
    alg = catalog.get(name)
    rng = seeded(seed)
    pool = catalog.module_pool(alg)
    x = random_complex(alg, rng, pool, max_total_dim=6)
    y = random_complex(alg, rng, pool, max_total_dim=6)
    assert completion_hom(constant(x), constant(y)).dim == khom(x, y).dim


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(catalog.names()), st.integers(0, 10_000), st.integers(-2, 2))
def test_truncation_homs_match_derived_homs(name, seed, n):
    alg = catalog.get(name)
    rng = seeded(seed)
    pool = catalog.module_pool(alg)
    x = random_complex(alg, rng, pool, max_total_dim=5)
    y = random_complex(alg, rng, pool, max_total_dim=5)
    hs = completion_hom(truncation_sequence(x), shifted(truncation_sequence(y), n))
    assert hs.dim == dbhom(x, y, n).dim
