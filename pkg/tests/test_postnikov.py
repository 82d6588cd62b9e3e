import pytest
from hypothesis import given, settings, strategies as st

from cotensor.chain_complex import homology_dims, is_quasi_iso, sphere
from cotensor.comodule import (
    coalgebra_comodule,
    cofree,
    identity_comodule_map,
    is_fibrant,
    is_fibration,
    trivial_comodule,
    validate_comodule,
    validate_comodule_map,
    zero_comodule,
    zero_comodule_map,
)
from cotensor.field_linalg import GF2, GF3, Matrix
from cotensor.fixtures import fixture_coalgebra, fixture_comodules
from cotensor.postnikov import (
    degree_zero_step,
    factor_step,
    factorize,
    fix_homology_step,
    generating_fibration,
    postnikov_tower,
    stabilized_limit,
    verify_tower,
)

from helpers import random_comodule, random_comodule_map, rng_for

N = 6


@pytest.fixture(scope="module")
def f2():
    return fixture_coalgebra("F2", GF2, N)


def test_generating_fibration_shapes(f2):
    g = generating_fibration(f2, 2, 1)
    assert validate_comodule_map(g) and g.is_surjective()
    assert g.source.dims[:5] == (0, 1, 1, 1, 1)
    z = generating_fibration(f2, 0, 2)
    assert z.source.carrier.is_zero() and z.target.dims[:3] == (2, 0, 2)


def test_fix_homology_kills_top_class(f2):
    c = coalgebra_comodule(f2)
    st = fix_homology_step(c, 2, Matrix(GF2, [[1]]))
    assert st.obj.dims[:3] == (1, 1, 1)
    assert homology_dims(st.obj.carrier, 2) == [1, 0, 0]
    assert validate_comodule(st.obj) and validate_comodule_map(st.projection)
    assert st.witness.verify(st.projection)


def test_fix_homology_with_zero_target(f2):
    x = fixture_comodules(f2)["cofree-S1"]
    st = fix_homology_step(x, 1, GF2.zeros(0, x.carrier.dim(1)))
    assert st.obj.dims == x.dims
    assert st.projection.is_injective() and st.projection.is_surjective()


def test_fix_homology_in_degree_one_keeps_degree_zero(f2):
    x = fixture_comodules(f2)["cofree-S0+S3"]
    y = fixture_comodules(f2)["cofree-S1"]
    from cotensor.comodule import comodule_direct_sum
    s = comodule_direct_sum(x, y)[0]
    fn = Matrix(GF2, [[1] * s.carrier.dim(1)])
    st = fix_homology_step(s, 1, fn)
    h0 = homology_dims(s.carrier, 4)
    h = homology_dims(st.obj.carrier, 4)
    assert h[0] == h0[0] and h[1] == h0[1] - 1


def test_fix_homology_rejects_bad_functionals(f2):
    c = coalgebra_comodule(f2)
    with pytest.raises(ValueError):
        fix_homology_step(c, 2, Matrix(GF2, [[0]]))
    with pytest.raises(ValueError):
        fix_homology_step(c, 0, Matrix(GF2, [[1]]))
    with pytest.raises(ValueError):
        fix_homology_step(c, 2, Matrix(GF2, [[1, 1]]))


def test_factor_step_makes_homology_iso(f2):
    x = trivial_comodule(sphere(GF2, 0, 1, N), f2)
    t = postnikov_tower(x, 3)
    st = factor_step(t.inclusions[1], 2)
    assert st.v == 1
    assert validate_comodule_map(st.inclusion)
    assert is_quasi_iso(st.inclusion.map, 2)
    assert (st.projection.map @ st.inclusion.map) == t.inclusions[1].map
    with pytest.raises(ValueError):
        factor_step(t.inclusions[1], N)


def test_degree_zero_step(f2):
    x = trivial_comodule(sphere(GF2, 0, 1, N), f2)
    j = zero_comodule_map(zero_comodule(f2), x)
    st = degree_zero_step(j)
    # coker H_0 is one-dimensional, so G_0 is the fiber of x -> S^0⊗C
    assert st.v == 1 and st.obj.dims[0] == 0
    assert validate_comodule(st.obj)
    st = degree_zero_step(identity_comodule_map(x))
    assert st.v == 0 and st.obj.dims == x.dims


TOWER_V = {
    ("F2", "triv-S0"): (0, 0, 1, 1, 1, 1),
    ("F2", "C"): (0, 0, 1, 0, 0, 0),
    ("F2", "cofree-S1"): (0, 0, 0, 1, 0, 0),
    ("F2", "triv-D2"): (0, 0, 0, 0, 0, 0),
    ("F4", "triv-S0"): (0, 0, 1, 0, 0, 1),
    ("F4", "C"): (0, 0, 1, 0, 1, 0),
    ("F4", "cofree-S0+S3"): (0, 0, 1, 0, 1, 1),
}


@pytest.mark.parametrize("name,key", sorted(TOWER_V))
def test_tower_attachments(name, key):
    c = fixture_coalgebra(name, GF2, N)
    t = postnikov_tower(fixture_comodules(c)[key], N)
    assert t.V == TOWER_V[(name, key)]
    assert verify_tower(t)


def test_tower_of_zero(f2):
    t = postnikov_tower(zero_comodule(f2), 4)
    assert all(s.carrier.is_zero() for s in t.stages) and verify_tower(t)


def test_tower_bounds(f2):
    x = coalgebra_comodule(f2)
    with pytest.raises(ValueError):
        postnikov_tower(x, N + 1)
    with pytest.raises(ValueError):
        postnikov_tower(x, 1)


def test_verify_tower_names_corrupted_stage(f2):
    x = trivial_comodule(sphere(GF2, 0, 1, N), f2)
    t = postnikov_tower(x, 5)
    bad = t.replace_stage(3, t.stages[2])
    r = verify_tower(bad)
    assert not r and r.flags["stage"] == 3


@pytest.mark.parametrize("name", ["F2", "F4"])
def test_stabilized_limit(name):
    c = fixture_coalgebra(name, GF3, N)
    for key, x in fixture_comodules(c).items():
        L = stabilized_limit(postnikov_tower(x, N))
        assert L.exact_through == N - 2
        assert validate_comodule_map(L.inclusion)
        assert is_quasi_iso(L.inclusion.map, L.homology_exact_through), key
        assert is_fibrant(L.obj), key


@settings(max_examples=6, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_random_towers_verify(seed):
    c = fixture_coalgebra("F4", GF2, 5)
    x = random_comodule(c, rng_for(seed), 2)
    t = postnikov_tower(x, 5)
    assert verify_tower(t)
    L = stabilized_limit(t)
    assert is_quasi_iso(L.inclusion.map, L.homology_exact_through)


def test_factorize_examples(f2):
    x = trivial_comodule(sphere(GF2, 0, 1, N), f2)
    F = factorize(identity_comodule_map(x))
    assert F.verify() and F.exact_through == N - 2
    assert F.V == (1, 0, 0, 0, 0, 0)
    F = factorize(zero_comodule_map(x, zero_comodule(f2)))
    assert F.verify() and F.V == (0, 0, 1, 1, 1, 1)
    assert is_fibrant(F.limit)
    g = generating_fibration(f2, 2, 1)
    F = factorize(g)
    assert F.verify()
    assert is_fibration(F.q).value is not False


@settings(max_examples=6, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_random_factorizations(seed):
    c = fixture_coalgebra("F2", GF3, 5)
    rng = rng_for(seed)
    x, y = random_comodule(c, rng, 2), random_comodule(c, rng, 2)
    F = factorize(random_comodule_map(x, y, rng))
    assert F.verify()
    assert is_quasi_iso(F.j_tilde.map, F.exact_through - 1)


def test_cofree_tower_over_point_is_constant():
    c = fixture_coalgebra("F1", GF2, N)
    x = cofree(sphere(GF2, 2, 1, N), c)
    t = postnikov_tower(x, N)
    assert not any(t.V)
    assert all(s.dims == t.stages[1].dims for s in t.stages[1:])
    assert stabilized_limit(t).obj.dims == t.stages[1].dims[:N - 1]


def test_cofree_tower_over_f2_attaches_cells(f2):
    # H(X ⊗ C) = H(X) ⊗ H(C) is larger than H(X), so X(1) is not yet right
    x = fixture_comodules(f2)["cofree-S1"]
    t = postnikov_tower(x, N)
    assert homology_dims(t.stages[1].carrier, 4) == [0, 1, 0, 2, 0]
    assert t.V[3] == 1


def test_factor_step_from_coaction_embedding(f2):
    x = trivial_comodule(sphere(GF2, 0, 1, N), f2)
    t = postnikov_tower(x, 3)
    assert t.stages[1].dims[:3] == (1, 0, 1)
    st = factor_step(t.inclusions[1], 2)
    assert st.obj.dims[:3] == (1, 1, 1)
    assert homology_dims(st.obj.carrier, 2) == [1, 0, 0]


def test_factorize_to_zero_matches_tower(f2):
    x = trivial_comodule(sphere(GF2, 0, 1, N), f2)
    F = factorize(zero_comodule_map(x, zero_comodule(f2)))
    L = stabilized_limit(postnikov_tower(x, N))
    assert F.limit.dims == L.obj.dims
