import pytest
from hypothesis import given, strategies as st

from clusterscat.rootdata import (
    COROOT,
    ROOT,
    WEIGHT,
    LatticeVector,
    RootData,
    RootDataError,
    format_matrix,
    parse_matrix,
    primitive,
)
from clusterscat.cambrian import NAMED_TYPES, named_type

from conftest import rank2_pairs

types = st.sampled_from(sorted(NAMED_TYPES))
vec3 = st.lists(st.integers(-4, 4), min_size=3, max_size=3)


def _vec(data, draw_list):
    return tuple(draw_list[: data.n] + [0] * (data.n - len(draw_list)))


@given(types, vec3, vec3)
def test_K_symmetric_and_omega_skew(name, u, v):
    data = named_type(name)
    u, v = _vec(data, u), _vec(data, v)
    U, V = LatticeVector(ROOT, u), LatticeVector(ROOT, v)
    assert data.form_K(U, V) == data.form_K(V, U)
    assert data.form_omega(U, V) == -data.form_omega(V, U)


@given(rank2_pairs)
def test_symmetrizer(ab):
    data = RootData.rank2(*ab)
    d = data.delta
    for i in range(2):
        for j in range(2):
            assert d[i] * data.B[i][j] == -d[j] * data.B[j][i]
    assert all((1 / x).denominator == 1 for x in d)


@given(types, st.data())
def test_reflections_are_involutions(name, draw):
    data = named_type(name)
    i = draw.draw(st.integers(0, data.n - 1))
    v = tuple(draw.draw(st.lists(st.integers(-5, 5), min_size=data.n, max_size=data.n)))
    p = tuple(draw.draw(st.lists(st.integers(-5, 5), min_size=data.n, max_size=data.n)))
    assert data.reflect_root(i, data.reflect_root(i, v)) == v
    assert data.reflect_weight(i, data.reflect_weight(i, p)) == p
    # the pairing is Weyl invariant
    assert data.pair(data.reflect_weight(i, p), data.reflect_root(i, v)) == data.pair(p, v)


@given(types, st.data())
def test_coroot_round_trip(name, draw):
    data = named_type(name)
    v = tuple(draw.draw(st.lists(st.integers(-5, 5), min_size=data.n, max_size=data.n)))
    k = LatticeVector(COROOT, data.root_to_coroot(v))
    assert data.as_root(k) == v


def test_simple_reflection_negates_simple_root():
    data = named_type("G2")
    assert data.reflect_root(0, (1, 0)) == (-1, 0)
    assert data.reflect_root(1, (0, 1)) == (0, -1)


def test_pairing_of_dual_bases():
    data = named_type("B3")
    for i in range(3):
        for j in range(3):
            rho = tuple(int(k == i) for k in range(3))
            alpha = tuple(int(k == j) for k in range(3))
            assert data.pair(rho, alpha) == (data.delta[i] if i == j else 0)


def test_positive_roots_of_finite_types():
    counts = {"A2": 3, "B2": 4, "G2": 6, "A3": 6, "B3": 9, "C3": 9, "A4": 10, "D4": 12}
    for name, want in counts.items():
        assert len(named_type(name).positive_real_roots(20)) == want


def test_matrix_round_trip():
    assert parse_matrix(format_matrix(((0, 2), (-2, 0)))) == ((0, 2), (-2, 0))


@pytest.mark.parametrize("bad", ["0,1;1", "0,x;1,0", "0,1;1,0", "1,1;-1,0"])
def test_bad_matrices(bad):
    with pytest.raises(RootDataError):
        RootData.from_string(bad)


def test_weight_tag_is_not_a_root():
    with pytest.raises(RootDataError):
        RootData.rank2(-1, 1).as_root(LatticeVector(WEIGHT, (1, 0)))


def test_primitive():
    assert primitive((4, -6)) == (2, -3)
    with pytest.raises(RootDataError):
        primitive((0, 0))
