from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from drsa.feasibility import (Infeasible, build_depth_topology, kraft_check,
                              trivial_solution)
from drsa.model import Instance, verify_solution


def test_kraft_examples():
    assert kraft_check([1, 1]).feasible
    assert str(kraft_check([1, 2, 2])) == "1/1"
    k = kraft_check([1])
    assert not k.feasible and str(k) == "1/2"
    assert not kraft_check([1, 1, 1]).feasible
    with pytest.raises(ValueError):
        kraft_check([])


def test_build_rejects_infeasible():
    with pytest.raises(Infeasible) as err:
        build_depth_topology([1, 1, 2])
    assert str(err.value.kraft) == "5/4"


def test_pairing_rule():
    topo = build_depth_topology([2, 1, 2])
    assert topo.kids("r") == ("s1",)
    # the two depth-2 slots are merged first; s1 holds that pair and slot1
    depth = topo.depth_map()
    assert [depth[f"slot{i}"] for i in range(3)] == [2, 1, 2]


@settings(max_examples=400, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=8))
def test_round_trip_property(depths):
    feasible = kraft_check(depths).feasible
    try:
        topo = build_depth_topology(depths)
    except Infeasible:
        assert not feasible
        return
    assert feasible
    depth = topo.depth_map()
    assert Counter(depth[v] for v in topo.leaves()) == Counter(depths)


def test_trivial_solution_verifies():
    inst = Instance.from_tuples([(3, 1, 1), (1, 4, 2), (2, 2, 2)])
    sol = trivial_solution(inst)
    assert verify_solution(inst, sol).ok
    assert sol.length == sum(t.position.norm() for t in inst)
