import pytest
from hypothesis import given, strategies as st

from clusterscat.cluster import (
    ClusterError,
    Rank2Params,
    c_root,
    cluster_variable,
    f_lemmas_asymmetric,
    f_lemmas_symmetric,
    f_polynomial,
    g_vector,
    hypergeometric_closed_form,
    hypergeometric_identity_check,
    limiting_wall_function,
    narayana_expected,
    narayana_functional_residual,
    narayana_number,
    narayana_series,
)
from clusterscat.series import TruncatedSeries, pow_rational

from conftest import finite_pairs, rank2_pairs

ROUTES = ("limit", "recursion", "closed_form", "canakci_schiffler")


@given(rank2_pairs, st.integers(-6, 6))
def test_f_polynomials_are_positive_with_constant_one(ab, i):
    F = f_polynomial(i, Rank2Params(*ab))
    assert F.constant_term() == 1
    assert all(isinstance(c, int) and c > 0 for c in F.terms.values())


@given(rank2_pairs, st.integers(-6, 6))
def test_g_vector_is_orthogonal_to_c_root(ab, i):
    p = Rank2Params(*ab)
    c, _ = c_root(i, p)
    assert p.data.pair(g_vector(i, p), c) == 0


@given(finite_pairs, st.integers(-6, 6))
def test_finite_type_is_periodic(ab, i):
    p = Rank2Params(*ab)
    N = p.num_cluster_variables
    assert cluster_variable(i, p, 8) == cluster_variable(i + N, p, 8)


def test_initial_f_polynomials():
    p = Rank2Params(-1, 1)
    assert f_polynomial(1, p).terms == {(0, 0): 1}
    assert f_polynomial(2, p).terms == {(0, 0): 1}
    assert f_polynomial(0, p).terms == {(0, 0): 1, (0, 1): 1}
    assert f_polynomial(-1, p).terms == {(0, 0): 1, (1, 0): 1, (1, 1): 1}


@pytest.mark.parametrize("K", [3, 6, 9])
def test_narayana_routes_agree(K):
    ref = narayana_series("limit", K)
    for r in ROUTES[1:]:
        assert narayana_series(r, K) == ref
    assert narayana_expected(K) == ref
    assert narayana_functional_residual(ref).is_zero()


def test_unknown_route():
    with pytest.raises(ClusterError):
        narayana_series("guess", 4)


def test_narayana_numbers():
    assert [narayana_number(4, j) for j in range(1, 5)] == [1, 6, 6, 1]
    assert sum(narayana_number(5, j) for j in range(1, 6)) == 42


@given(st.integers(3, 12), st.data())
def test_hypergeometric_identity(i, data):
    j = data.draw(st.integers(2, i - 1))
    assert hypergeometric_identity_check(i, j)


def test_hypergeometric_closed_form_value():
    # (+1) * (1/5) * C(3,1) * C(5,2)
    assert hypergeometric_closed_form(3, 2) == 6


def test_affine_limiting_walls():
    K = 10
    one = TruncatedSeries.one(2, K)
    t = TruncatedSeries(2, K, {(1, 1): 1})
    u = TruncatedSeries(2, K, {(1, 2): 1})
    assert limiting_wall_function(Rank2Params(-2, 2), K) == pow_rational(one - t, -2)
    assert limiting_wall_function(Rank2Params(-4, 1), K) == (one + u) * pow_rational(one - u, -2)


def test_limiting_wall_needs_affine_type():
    with pytest.raises(ClusterError):
        limiting_wall_function(Rank2Params(-3, 1), 6)


def test_f_lemmas():
    checks = f_lemmas_symmetric(6) + f_lemmas_asymmetric(6)
    assert checks and all(c.ok for c in checks), [c for c in checks if not c.ok]


def test_bad_params():
    with pytest.raises(ClusterError):
        Rank2Params(1, 1)
