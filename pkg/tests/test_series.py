from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from clusterscat.series import (
    SeriesError,
    TruncatedSeries,
    compose,
    invert,
    parse_series,
    pow_rational,
    restrict_exponent_ray,
    sqrt,
)

from conftest import series


@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    one = TruncatedSeries.one(2, a.order)
    assert a * one == a
    assert a - a == TruncatedSeries.zero(2, a.order)


@given(series(unit=True))
def test_inverse(a):
    assert a * invert(a) == TruncatedSeries.one(2, a.order)


@given(series(unit=True), st.integers(-3, 3), st.integers(-3, 3))
def test_integer_power_additivity(a, e, f):
    assert pow_rational(a, e) * pow_rational(a, f) == pow_rational(a, e + f)


@given(series(unit=True), st.fractions(-2, 2, max_denominator=3), st.fractions(-2, 2, max_denominator=3))
def test_rational_power_additivity(a, e, f):
    assert pow_rational(a, e) * pow_rational(a, f) == pow_rational(a, e + f)


@given(series(unit=True))
def test_sqrt_squares_back(a):
    r = sqrt(a)
    assert r * r == a


@given(series(order=6), series(order=6), st.integers(0, 6))
def test_truncation_commutes_with_product(a, b, k):
    assert (a * b).truncate(k) == a.truncate(k) * b.truncate(k)


@given(series())
def test_text_round_trip(a):
    assert parse_series(a.to_text(), 2, a.order) == a


def test_non_unit_inverse_rejected():
    with pytest.raises(SeriesError):
        invert(TruncatedSeries(2, 3, {(1, 0): 1}))


def test_rational_power_needs_unit_constant():
    with pytest.raises(SeriesError):
        pow_rational(TruncatedSeries(1, 3, {(0,): 2, (1,): 1}), Fraction(1, 2))


def test_geometric_series():
    t = TruncatedSeries(1, 6, {(1,): 1})
    one = TruncatedSeries.one(1, 6)
    assert invert(one - t).terms == {(k,): 1 for k in range(7)}
    assert pow_rational(one - t, -2).terms == {(k,): k + 1 for k in range(7)}


def test_restrict_exponent_ray():
    s = TruncatedSeries(2, 6, {(1, 1): 2, (2, 2): 3, (1, 2): 5, (0, 0): 1})
    assert restrict_exponent_ray(s, (1, 1)).terms == {(0, 0): 1, (1, 1): 2, (2, 2): 3}


@given(series(unit=True))
def test_compose_with_identity(a):
    x = TruncatedSeries.variable(0, 2, a.order)
    y = TruncatedSeries.variable(1, 2, a.order)
    assert compose(a, [x, y]) == a


def test_bad_exponent_rejected():
    with pytest.raises(SeriesError):
        TruncatedSeries(2, 3, {(-1, 0): 1})
