import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seqcomp import exactla as la

import oracle


def small_matrix(p_choices=(2, 3, 5), max_side=4):
    @st.composite
    def build(draw):
        p = draw(st.sampled_from(p_choices))
        r = draw(st.integers(0, max_side))
        c = draw(st.integers(1, max_side))
        cells = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
        return p, np.array(cells, dtype=np.int64).reshape(r, c)
    return build()


def test_rref_identity_over_f2():
    r, red, piv = la.rref(la.eye(2), 2)
    assert r == 2 and piv == [0, 1]
    assert np.array_equal(red, la.eye(2))


def test_rref_zero_matrix():
    r, _, piv = la.rref(la.zeros(3, 3), 3)
    assert r == 0 and piv == []


def test_rank_of_dependent_rows_mod_5():
    m = la.mat([[1, 2], [2, 4]], 5)
    assert la.rank(m, 5) == 1 == oracle.rank(m, 5)


def test_kernel_of_identity_and_zero():
    assert la.kernel_basis(la.eye(3), 2).shape == (3, 0)
    assert la.kernel_basis(la.zeros(3, 3), 3).shape == (3, 3)


def test_kernel_of_row_ones_over_f2():
    k = la.kernel_basis(la.mat([[1, 1]], 2), 2)
    assert k.shape == (2, 1)
    assert list(k[:, 0]) == [1, 1]


def test_solve_cases():
    b = np.array([1, 0, 1])
    assert np.array_equal(la.solve(la.eye(3), b, 2), b)
    assert la.solve(la.zeros(2, 2), np.array([1, 0]), 2) is None
    x = la.solve(la.mat([[1, 1], [0, 1]], 2), np.array([0, 1]), 2)
    assert list(x) == [1, 1]
    only = oracle.solutions([[1, 1], [0, 1]], [0, 1], 2)
    assert len(only) == 1 and list(only[0]) == [1, 1]


def test_quotient_dimensions():
    v = la.eye(2)
    lift, proj = la.quotient_basis(v, v, 2)
    assert lift.shape[1] == 0
    lift, proj = la.quotient_basis(v, la.zeros(2, 0), 2)
    assert lift.shape[1] == 2
    w = la.mat([[1], [1]], 2)
    lift, proj = la.quotient_basis(v, w, 2)
    assert lift.shape[1] == 1
    # four vectors, cosets of size two
    assert len({tuple(la.mul(proj, x.reshape(2, 1), 2)[:, 0]) for x in oracle.vectors(2, 2)}) == 2
    assert not la.mul(proj, w, 2).any()


def test_quotient_rejects_non_subspace():
    with pytest.raises(ValueError):
        la.quotient_basis(la.mat([[1], [0]], 2), la.mat([[0], [1]], 2), 2)


def test_inverse_of_singular_raises():
    with pytest.raises(ValueError):
        la.inverse(la.mat([[1, 1], [1, 1]], 2), 2)


def test_composite_modulus_rejected():
    with pytest.raises(ValueError):
        la.check_prime(4)


@settings(max_examples=60, deadline=None)
@given(small_matrix())
def test_rank_nullity(case):
    p, m = case
    k = la.kernel_basis(m, p)
    assert la.rank(m, p) + k.shape[1] == m.shape[1]
    assert not la.mul(m, k, p).any()
    assert la.rank(k, p) == k.shape[1]


@settings(max_examples=40, deadline=None)
@given(small_matrix(p_choices=(2, 3), max_side=3))
def test_rank_matches_enumeration(case):
    p, m = case
    assert la.rank(m, p) == oracle.rank(m, p)


@settings(max_examples=60, deadline=None)
@given(small_matrix(), st.data())
def test_solve_solves_consistent_systems(case, data):
    p, a = case
    x0 = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[1], max_size=a.shape[1])))
    b = la.mul(a, x0.reshape(-1, 1), p)[:, 0]
    x = la.solve(a, b, p)
    assert x is not None
    assert np.array_equal(la.mul(a, x.reshape(-1, 1), p)[:, 0], b)


@settings(max_examples=40, deadline=None)
@given(small_matrix())
def test_left_inverse_round_trip(case):
    p, m = case
    basis = la.image_basis(m, p)
    li = la.LeftInverse(basis, p)
    c = np.arange(basis.shape[1]) % p
    v = la.mul(basis, c.reshape(-1, 1), p)[:, 0]
    assert np.array_equal(li.coords(v), c)
    assert li.contains(v)


@settings(max_examples=40, deadline=None)
@given(small_matrix())
def test_quotient_dimension_is_rank_difference(case):
    p, m = case
    w = m[:, :1]
    lift, proj = la.quotient_basis(m, w, p)
    assert lift.shape[1] == la.rank(m, p) - la.rank(w, p)
    assert np.array_equal(la.mul(proj, lift, p), la.eye(lift.shape[1]))
