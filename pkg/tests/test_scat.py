import json

import pytest
from hypothesis import given, strategies as st

from clusterscat.rootdata import RootData
from clusterscat.scat import (
    CCW,
    LaurentElement,
    NonGenericPath,
    PathSpec,
    ScatError,
    ScatteringDiagram,
    _at_order,
    check_consistency,
    complete_rank2,
    cross_wall,
    initial_diagram,
    is_outgoing,
    path_ordered_product,
    tiles_hyperplane,
    wall_set,
)
from clusterscat.series import TruncatedSeries

from conftest import rank2_pairs


@given(rank2_pairs, st.integers(-3, 3), st.integers(-3, 3), st.sampled_from([1, -1]))
def test_cross_wall_inverse(ab, l1, l2, sign):
    data = RootData.rank2(*ab)
    d = complete_rank2(data, 6)
    m = LaurentElement.monomial((l1, l2), 6)
    for w in d.nontrivial():
        there = cross_wall(data, m, w, sign)
        assert cross_wall(data, there, w, -sign) == m


@pytest.mark.parametrize("ab", [(0, 0), (-1, 1), (-2, 1), (-3, 1), (-2, 2), (-4, 1), (-1, 4), (-3, 3)])
def test_completion_is_consistent_and_outgoing(ab):
    d = complete_rank2(RootData.rank2(*ab), 8)
    assert check_consistency(d).consistent
    assert all(is_outgoing(d.data, w) for w in d.nontrivial() if w.cone.kind == "cone")


@given(rank2_pairs, st.integers(1, 8))
def test_order_stability(ab, k):
    data = RootData.rank2(*ab)
    assert wall_set(_at_order(complete_rank2(data, 9), k)) == wall_set(complete_rank2(data, k))


@given(rank2_pairs)
def test_json_round_trip(ab):
    d = complete_rank2(RootData.rank2(*ab), 7)
    text = d.dumps()
    back = ScatteringDiagram.from_json(json.loads(text))
    assert back.same_walls(d)
    assert back.dumps() == text


def test_initial_diagram_alone_is_inconsistent_at_order_two():
    d = initial_diagram(RootData.rank2(-1, 1), 2)
    rep = check_consistency(d)
    assert not rep.consistent
    assert rep.first_failing_order == 2


def test_commuting_walls_are_consistent():
    assert check_consistency(initial_diagram(RootData.rank2(0, 0), 4)).consistent


def test_a2_pentagon():
    d = complete_rank2(RootData.rank2(-1, 1), 6)
    walls = d.nontrivial()
    assert len(walls) == 3
    extra = [w for w in walls if w.cone.kind == "cone"]
    assert [w.normal for w in extra] == [(1, 1)]
    assert extra[0].func.terms == {(0,): 1, (1,): 1}


def test_path_endpoint_on_a_wall_is_rejected():
    d = complete_rank2(RootData.rank2(-1, 1), 4)
    m = LaurentElement.monomial((1, 0), 4)
    with pytest.raises(NonGenericPath):
        path_ordered_product(d, PathSpec((0, 1), (1, 1), CCW), m)


def test_laurent_expand():
    data = RootData.rank2(-2, 2)
    m = LaurentElement((1, 0), (0, 0), TruncatedSeries(2, 3, {(0, 0): 1, (0, 1): 1}))
    # yhat_2 = x^{B e_2} y_2 = x1^2 y2
    assert m.expand(data) == {((1, 0), (0, 0)): 1, ((3, 0), (0, 1)): 1}


def test_tiles_hyperplane():
    square = [((1, 0), (0, 1)), ((0, 1), (-1, 0)), ((-1, 0), (0, -1)), ((0, -1), (1, 0))]
    assert tiles_hyperplane(square)
    assert not tiles_hyperplane(square[:3])


def test_completion_needs_rank_two():
    with pytest.raises(ScatError):
        complete_rank2(RootData.from_string("0,1,0;-1,0,1;0,-1,0"), 3)
