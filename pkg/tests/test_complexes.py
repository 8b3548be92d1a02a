import pytest
from hypothesis import given, settings, strategies as st

from seqcomp import catalog
from seqcomp import exactla as la
from seqcomp.complexes import (Cone, Complex, ComplexError, brutal_truncate_geq, cohomology_dims, compose,
                               cone, identity, is_acyclic, is_quasi_iso, random_chain_map, random_complex,
                               shift, stalk, tau_gt, tau_leq, zero_map)
from seqcomp.derived import apply_homotopy, find_homotopy

from helpers import residue_field, seeded, x_map


def test_shift_moves_stalk_down():
    s = stalk(residue_field(), 0)
    t = shift(s, 1)
    assert t.lo == -1 and t.dim(-1) == 1 and t.dim(0) == 0
    assert shift(t, -1) is s


def test_cone_of_x_has_two_cohomologies():
    c = cone(x_map())
    assert {n: d for n, d in cohomology_dims(c).items() if d} == {-1: 1, 0: 1}


def test_cone_of_zero_splits():
    f = x_map()
    z = zero_map(f.source, f.target)
    c = cone(z)
    assert [c.dim(n) for n in (-1, 0)] == [2, 2]
    assert {n: d for n, d in cohomology_dims(c).items() if d} == {-1: 2, 0: 2}


def test_cone_triangle_maps_are_chain_maps():
    f = x_map()
    cn = Cone(f)
    cn.inclusion.validate()
    cn.projection.validate()
    # Y -> cone -> Sigma X composes to zero on the nose
    assert compose(cn.projection, cn.inclusion).is_zero()
    # X -> Y -> cone is null-homotopic
    h = find_homotopy(compose(cn.inclusion, f), zero_map(f.source, cn.complex))
    assert h is not None
    assert apply_homotopy(h, f.source, cn.complex).equals(compose(cn.inclusion, f))


def test_brutal_truncations():
    c = cone(x_map())
    assert brutal_truncate_geq(c, c.lo)[0] is c
    assert brutal_truncate_geq(c, c.hi + 1)[0].total_dim() == 0
    t, inc = brutal_truncate_geq(c, 0)
    assert t.lo == 0 and t.dim(0) == c.dim(0) and t.dim(-1) == 0
    inc.validate()


def test_smart_truncations_of_cone():
    c = cone(x_map())
    above, _ = tau_gt(c, -1)
    assert {n: d for n, d in cohomology_dims(above).items() if d} == {0: 1}
    below, _ = tau_leq(c, -1)
    assert {n: d for n, d in cohomology_dims(below).items() if d} == {-1: 1}


def test_truncation_of_concentrated_complex_is_acyclic():
    s = stalk(residue_field(), 0)
    assert is_acyclic(tau_gt(s, 0)[0])


def test_quasi_iso_basic():
    c = cone(x_map())
    assert is_quasi_iso(identity(c))
    assert not is_quasi_iso(zero_map(c, c))


def test_differential_must_square_to_zero():
    f = x_map()
    reg = f.source.module(0)
    with pytest.raises(ComplexError):
        Complex(reg.algebra, -1, [reg, reg, reg], [f.at(0), la.eye(2)])


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(catalog.names()), st.integers(0, 10_000))
def test_cone_long_exact_sequence(name, seed):
    alg = catalog.get(name)
    rng = seeded(seed)
    pool = catalog.module_pool(alg)
    x = random_complex(alg, rng, pool, max_total_dim=6)
    y = random_complex(alg, rng, pool, max_total_dim=6)
    f = random_chain_map(x, y, rng)
    c = Cone(f)
    # ... -> H^n X -> H^n Y -> H^n C -> H^{n+1} X -> ...: ranks add up
    from seqcomp.complexes import induced_on_cohomology
    hx, hy, hc = cohomology_dims(x), cohomology_dims(y), cohomology_dims(c.complex)
    for n in range(min(x.lo, y.lo) - 2, max(x.hi, y.hi) + 2):
        rf = la.rank(induced_on_cohomology(f, n), alg.p)
        ri = la.rank(induced_on_cohomology(c.inclusion, n), alg.p)
        rp = la.rank(induced_on_cohomology(c.projection, n), alg.p)
        assert hy.get(n, 0) == rf + ri
        assert hc.get(n, 0) == ri + rp
        rf_next = la.rank(induced_on_cohomology(f, n + 1), alg.p)
        assert hx.get(n + 1, 0) == rp + rf_next


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(catalog.names()), st.integers(0, 10_000), st.integers(-2, 2))
def test_shift_preserves_differential_square(name, seed, m):
    alg = catalog.get(name)
    x = random_complex(alg, seeded(seed), catalog.module_pool(alg), max_total_dim=8)
    s = shift(x, m)
    s.validate()
    assert cohomology_dims(s) == {n - m: d for n, d in cohomology_dims(x).items()}
