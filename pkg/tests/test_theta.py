from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from clusterscat.cluster import Rank2Params, cluster_indices, cluster_variable, g_vector
from clusterscat.rootdata import RootData
from clusterscat.scat import NonGenericPath, complete_rank2
from clusterscat.theta import (
    ThetaError,
    enumerate_broken_lines,
    laurent_from_monomials,
    theta_closed_form_m1b,
    theta_closed_form_m2a,
    theta_function,
)
from clusterscat.verify import THETA_ENDPOINTS, THETA_EXAMPLES, _expand

from conftest import rank2_pairs

_DIAGRAMS = {}


def diagram(ab, K=8):
    if (ab, K) not in _DIAGRAMS:
        _DIAGRAMS[(ab, K)] = complete_rank2(RootData.rank2(*ab), K)
    return _DIAGRAMS[(ab, K)]


@pytest.mark.parametrize("example,p", list(zip(THETA_EXAMPLES, THETA_ENDPOINTS)))
def test_reference_examples(example, p):
    (a, b), lam, display = example
    d = diagram((a, b), 10)
    th = theta_function(d, lam) if p is None else theta_function(d, lam, p=p)
    assert th.series == laurent_from_monomials(d.data, lam, _expand(display, b), 10).series


@given(rank2_pairs)
def test_dominant_weight_gives_monomial(ab):
    d = diagram(ab)
    th = theta_function(d, (1, 0))
    assert th.lam == (1, 0) and th.series.terms == {(0, 0): 1}
    assert len(enumerate_broken_lines(d, (2, 3))) == 1


@given(rank2_pairs, st.integers(-4, 4))
def test_cluster_monomials(ab, i):
    p = Rank2Params(*ab)
    assume(i in cluster_indices(p, span=4))
    d = diagram(ab)
    th = theta_function(d, g_vector(i, p))
    assert th == cluster_variable(i, p, 8)


@given(st.sampled_from([(-1, 3), (-3, 1), (-2, 2), (-4, 1)]),
       st.tuples(st.integers(-3, 0), st.integers(0, 3)),
       st.fractions(Fraction(1, 50), 5, max_denominator=97),
       st.fractions(Fraction(1, 50), 5, max_denominator=89))
def test_independent_of_endpoint(ab, lam, x, y):
    assume(any(lam))
    d = diagram(ab, 6)
    try:
        other = theta_function(d, lam, p=(x, y))
    except NonGenericPath:
        assume(False)
    assert other == theta_function(d, lam)


@given(st.sampled_from([(-1, 1), (-2, 1), (-1, 2), (-3, 1), (-1, 3), (-2, 2), (-4, 1), (-1, 4)]), st.data())
def test_closed_form_m1b(ab, data):
    a, b = ab
    m1, m2 = data.draw(st.integers(-b, 0)), data.draw(st.integers(0, 3))
    assume(m1 or m2)
    cf = theta_closed_form_m1b(Rank2Params(a, b), m1, m2)
    d = diagram(ab)
    assert theta_function(d, (m1, m2)).series == laurent_from_monomials(d.data, (m1, m2), cf, 8).series


@given(st.sampled_from([(-2, 1), (-3, 1), (-2, 2), (-4, 1)]), st.data())
def test_closed_form_m2a(ab, data):
    a, b = ab
    m1, m2 = data.draw(st.integers(-b - 3, -b - 1)), data.draw(st.integers(0, -a - 1))
    cf = theta_closed_form_m2a(Rank2Params(a, b), m1, m2)
    d = diagram(ab)
    assert theta_function(d, (m1, m2)).series == laurent_from_monomials(d.data, (m1, m2), cf, 8).series


def test_closed_form_hypotheses_enforced():
    with pytest.raises(ThetaError):
        theta_closed_form_m1b(Rank2Params(-3, 1), -2, 3)
    with pytest.raises(ThetaError):
        theta_closed_form_m2a(Rank2Params(-3, 1), -2, 3)


def test_endpoint_on_a_wall():
    d = diagram((-1, 1))
    with pytest.raises(NonGenericPath):
        theta_function(d, (-1, 1), p=(0, 1))


def test_zero_weight_rejected():
    with pytest.raises(ThetaError):
        theta_function(diagram((-1, 1)), (0, 0))


def test_broken_line_records_bends():
    d = diagram((-3, 1), 10)
    lines = enumerate_broken_lines(d, (-2, 3))
    bent = [bl for bl in lines if len(bl.segments) > 1]
    assert bent
    for bl in bent:
        for seg in bl.segments[1:]:
            assert seg.start is not None and seg.bend_power >= 1
        assert bl.monomial()[1] == bl.final.beta
