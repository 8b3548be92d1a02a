import pytest
from hypothesis import given, settings, strategies as st

from seqcomp import catalog
from seqcomp.algebra import module_hom
from seqcomp.complexes import cone, is_quasi_iso, random_complex, shift, stalk
from seqcomp.derived import dbhom, khom, pc_certificate, resolve, resolve_complex

from helpers import residue_field, seeded, x_map

# Ext^n(k, k) from the 2-periodic minimal resolutions (every term the regular module)
TRUNCATED_EXT = {"D2": [1, 1, 1, 1, 1, 1], "D3": [1, 1, 1, 1, 1, 1]}


@pytest.mark.parametrize("name", sorted(TRUNCATED_EXT))
def test_self_extensions_of_residue_field(name):
    k = stalk(residue_field(catalog.get(name)), 0)
    dims = [dbhom(k, k, n).dim for n in range(6)]
    assert dims == TRUNCATED_EXT[name]
    assert all(dbhom(k, k, n).dim == 0 for n in range(-3, 0))


def test_path_algebra_extensions_between_simples():
    s1, s2 = [stalk(s, 0) for s in catalog.get("A2").simples()]
    assert [dbhom(s1, s2, n).dim for n in (0, 1, 2)] == [0, 1, 0]
    assert [dbhom(s2, s1, n).dim for n in (0, 1, 2)] == [0, 0, 0]


def test_resolution_of_residue_field_over_dual_numbers():
    r = resolve(residue_field())
    assert r.is_minimal(4)
    for i in range(4):
        t = r.truncation(i)
        assert [t.dim(n) for n in t.degrees()] == [2] * (i + 1)


def test_projective_resolves_to_itself():
    p2 = catalog.get("A2").proj_indecs()[1]
    r = resolve(p2)
    assert r.truncation(3).total_dim() == p2.dim


def test_augmentation_is_quasi_iso_in_certified_range():
    r = resolve(residue_field())
    from seqcomp.complexes import tau_gt_map
    assert is_quasi_iso(tau_gt_map(r.augmentation(3), -3))


@pytest.mark.parametrize("name", catalog.names())
def test_pc_certificate_passes_and_corruption_fails(name):
    alg = catalog.get(name)
    for m in catalog.module_pool(alg):
        r = resolve(m)
        for i in range(5):
            assert pc_certificate(r, i).passed
        # a differential into degree 0 that can be zeroed
        if r.truncation(4).d(-1).any():
            assert not pc_certificate(r, 4, corrupt=-1).passed


def test_pc_certificate_of_cone_resolution():
    assert pc_certificate(resolve_complex(cone(x_map())), 3).passed


def test_stalk_hom_in_degree_zero_is_module_hom():
    for name in catalog.names():
        pool = catalog.module_pool(catalog.get(name))
        for m in pool:
            for n in pool:
                assert dbhom(stalk(m, 0), stalk(n, 0), 0).dim == module_hom(m, n).dim


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(catalog.names()), st.integers(0, 10_000), st.integers(-2, 2))
def test_dbhom_is_shift_invariant(name, seed, n):
    alg = catalog.get(name)
    rng = seeded(seed)
    pool = catalog.module_pool(alg)
    x = random_complex(alg, rng, pool, max_total_dim=5)
    y = random_complex(alg, rng, pool, max_total_dim=5)
    assert dbhom(x, y, n).dim == dbhom(shift(x, 1), shift(y, 1), n).dim
    assert dbhom(x, y, n).dim == dbhom(x, shift(y, n), 0).dim


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(catalog.names()), st.integers(0, 10_000))
def test_projective_sources_see_homotopy_classes(name, seed):
    alg = catalog.get(name)
    rng = seeded(seed)
    projs = alg.proj_indecs()
    x = random_complex(alg, rng, projs, max_total_dim=5)
    y = random_complex(alg, rng, catalog.module_pool(alg), max_total_dim=5)
    assert dbhom(x, y, 0).dim == khom(x, y).dim
