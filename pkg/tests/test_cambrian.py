import json

import pytest
from hypothesis import assume, given, strategies as st

from clusterscat.cambrian import (
    Cambrian,
    CambrianError,
    CoxeterElement,
    CoxeterGroup,
    brute_force_sortable_count,
    build_cambscat,
    check_gregarious_shards,
    check_outgoing,
    check_star_structure,
    fan_to_json,
    named_type,
)
from clusterscat.rootdata import RootData
from clusterscat.scat import check_consistency, complete_rank2, merge_equivalent, wall_set

# Catalan numbers of the named types
SORTABLE = {"A1xA1": 4, "A2": 5, "B2": 6, "G2": 8, "A3": 14, "B3": 20, "C3": 20, "A4": 42, "D4": 50}
ORDERS = {"A1xA1": 4, "A2": 6, "B2": 8, "G2": 12, "A3": 24, "B3": 48, "C3": 48, "A4": 120, "D4": 192}


@pytest.mark.parametrize("name", sorted(SORTABLE))
def test_sortable_counts(name):
    data = named_type(name)
    camb = Cambrian(data)
    assert len(camb.group.elements) == ORDERS[name]
    assert len(camb.enumerate_sortable()) == SORTABLE[name]
    assert brute_force_sortable_count(data, camb.c) == SORTABLE[name]


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_every_coxeter_element_gives_catalan_many(name):
    # every orientation of the (tree) Dynkin diagram is acyclic; flip signs to realise it
    data = named_type(name)
    n = data.n
    import itertools
    for word in itertools.permutations(range(n)):
        c = CoxeterElement(word)
        B = [[0] * n for _ in range(n)]
        pos = {s: k for k, s in enumerate(word)}
        for i in range(n):
            for j in range(n):
                if i != j and data.A[i][j]:
                    B[i][j] = -data.A[i][j] if pos[i] < pos[j] else data.A[i][j]
        d = RootData(tuple(map(tuple, B)))
        assert c.compatible_with(d.B)
        assert len(Cambrian(d, c).enumerate_sortable()) == SORTABLE[name]


def test_non_sortable_element_is_rejected():
    data = named_type("A2")
    camb = Cambrian(data)
    bad = [v for v in camb.group.elements.values() if not camb.is_sortable(v)]
    assert len(bad) == 1
    with pytest.raises(CambrianError):
        camb.sortable(bad[0])
    with pytest.raises(CambrianError):
        camb.c_roots(bad[0])


def test_incompatible_coxeter_element():
    data = named_type("A2")
    with pytest.raises(CambrianError):
        Cambrian(data, CoxeterElement((1, 0)))
    with pytest.raises(CambrianError):
        CoxeterElement((0, 0))


def test_cyclic_exchange_matrix_has_no_coxeter_element():
    with pytest.raises(CambrianError):
        CoxeterElement.from_exchange(((0, 1, -1), (-1, 0, 1), (1, -1, 0)))


@given(st.sampled_from(["A2", "B2", "G2", "A3", "B3"]), st.data())
def test_cones_cover_the_space(name, draw):
    data = named_type(name)
    fan = Cambrian(data).fan()
    roots = CoxeterGroup(data).positive_roots
    p = tuple(draw.draw(st.lists(st.integers(-20, 20), min_size=data.n, max_size=data.n)))
    assume(all(data.pair(p, r) != 0 for r in roots))
    inside = [c for c in fan.cones if all(data.pair(p, h) > 0 for h in c.normals)]
    assert len(inside) == 1
    assert fan.cones[fan.locate(p)] is inside[0]


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "C3"])
def test_cambrian_diagram_checks(name):
    data = named_type(name)
    d = build_cambscat(data, K=6, merge=False)
    assert check_outgoing(d).ok
    assert check_consistency(d).consistent
    assert check_star_structure(data).ok


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_gregarious_shards(name):
    assert check_gregarious_shards(named_type(name), K=6).ok


@pytest.mark.parametrize("ab", [(0, 0), (-1, 1), (-2, 1), (-3, 1)])
def test_rank2_matches_completion(ab):
    data = RootData.rank2(*ab)
    camb = merge_equivalent(build_cambscat(data, CoxeterElement((0, 1)), 8))
    assert wall_set(camb) == wall_set(complete_rank2(data, 8))


def test_fan_json():
    camb = Cambrian(named_type("A3"))
    obj = json.loads(json.dumps(fan_to_json(camb)))
    assert obj["c"] == [1, 2, 3]
    assert len(obj["sortable"]) == 14
    for s in obj["sortable"]:
        assert len(s["c_roots"]) == len(s["generators"]) == 3
