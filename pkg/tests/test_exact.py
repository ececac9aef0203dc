import random

import pytest
from hypothesis import given, settings

from drsa.embedding import BindingError, optimal_embed
from drsa.exact import BudgetExceeded, count_topologies, enumerate_topologies, solve_exact
from drsa.feasibility import Infeasible
from drsa.model import Instance, Topology, hanan_grid, verify_solution
from drsa.oracle import brute_force

from conftest import instances, random_instance


@pytest.mark.parametrize("pts,length", [
    ([(2, 0, 1), (0, 2, 1)], 4),
    ([(2, 2, 2), (2, 0, 2), (0, 2, 1)], 6),
    ([(3, 5, 0)], 8),
])
def test_spec_examples(pts, length):
    inst = Instance.from_tuples(pts)
    sol = solve_exact(inst)
    assert sol.length == length
    assert verify_solution(inst, sol).ok


def test_embed_fixed_topology():
    inst = Instance.from_tuples([(2, 2, 2), (2, 0, 2), (0, 2, 1)])
    topo = Topology({"r": ("s1",), "s1": ("s2", "t3"), "s2": ("t1", "t2")})
    sol = optimal_embed(inst, topo)
    assert sol.length == 6
    assert verify_solution(inst, sol).ok


def test_embed_binding_errors():
    inst = Instance.from_tuples([(2, 0, 1), (0, 2, 1)])
    with pytest.raises(BindingError):
        optimal_embed(inst, Topology({"r": ("s1",), "s1": ("t1", "x")}))
    with pytest.raises(BindingError):
        optimal_embed(inst, Topology({"r": ("s1",), "s1": ("s2", "t2"), "s2": ("t1", "t9")}))


def test_infeasible_and_budget():
    with pytest.raises(Infeasible):
        list(enumerate_topologies(Instance.from_tuples([(1, 1, 1)])))
    inst = Instance.from_tuples([(i, 7 - i, 3) for i in range(8)])
    assert count_topologies(inst) == 315
    with pytest.raises(BudgetExceeded):
        solve_exact(inst, budget=10)


@settings(max_examples=150, deadline=None)
@given(instances(max_terms=4, max_coord=5))
def test_matches_oracle(inst):
    a = solve_exact(inst)
    b = brute_force(inst)
    assert a.length == b.length
    assert verify_solution(inst, a).ok and verify_solution(inst, b).ok


def test_steiner_points_on_hanan_grid():
    rng = random.Random(7)
    for _ in range(60):
        inst = random_instance(rng)
        sol = solve_exact(inst)
        grid = set(hanan_grid([t.position for t in inst] + [(0, 0)]))
        assert set(sol.steiner_positions()) <= grid


def test_deterministic():
    inst = Instance.from_tuples([(1, 3, 2), (3, 1, 2), (2, 2, 1)])
    a, b = solve_exact(inst), solve_exact(inst)
    assert a.edge_key() == b.edge_key() and a.length == b.length
