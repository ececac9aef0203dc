import pytest

from drsa.model import Point
from drsa.reduction.gadgetcheck import differences, verify_gadget
from drsa.reduction.gadgets import breakpoints, port_positions
from drsa.reduction.tilesolve import build_template, check_tile_solution, solve_tile
from drsa.tiles import NoConnection, Port, TileProblem, solve_tile_branching

ALPHA = 10


def by_case(rows):
    return {r.case: r for r in rows}


def test_breakpoints_and_ports():
    assert breakpoints(3) == (0, 3, 6, 7, 8, 11, 14)
    ports = port_positions(3)
    assert ports[1][:2] == (Point(0, 7), Point(0, 6))
    assert ports[4][:2] == (Point(7, 14), Point(6, 14))


def test_branching_needs_an_output():
    prob = TileProblem(4, 4, ((Point(0, 2), 1),),
                       (Port("input", "right", Point(4, 2), Point(4, 1), 0, 1),))
    with pytest.raises(ValueError):
        solve_tile_branching(prob)


def test_unreachable_terminal_has_no_connection():
    # terminals far deeper than a binary tree inside the tile can reach
    t = build_template("connection-h", 6)
    prob = t.problem(0, (1,))
    bad = TileProblem(prob.width, prob.height,
                      tuple((p, d + 40) for p, d in prob.terminals), prob.ports, prob.labels)
    with pytest.raises(NoConnection):
        solve_tile_branching(bad)


@pytest.mark.parametrize("kind", ["variable", "connection-h", "connection-v", "clause", "crossing"])
def test_gadget_lemmas_hold(kind):
    for row in verify_gadget(kind, ALPHA, beta=4, gamma=5):
        assert row.dp == row.lemma, row


@pytest.mark.parametrize("kind", ["splitter-h", "splitter-v"])
def test_splitter_measured_values(kind):
    gamma = 5
    rows = by_case(verify_gadget(kind, ALPHA, beta=4, gamma=gamma))
    L = 6 * ALPHA + gamma + 3
    assert rows["true"].dp == L
    assert rows["false"].dp == L + 10
    assert rows["forbidden"].dp == L + 1 + gamma


def test_parity_differences_clause():
    diff = differences(verify_gadget("clause", ALPHA, beta=4))
    assert diff == {"row true": (1, 1), "column true": (1, 1), "both false": (6, 6)}


@pytest.mark.parametrize("kind,params,ins", [
    ("clause", (8,), (0, 0)),
    ("splitter-h", (20,), (1,)),
    ("splitter-v", (35,), (0,)),
    ("junction-h", (8,), (1, 0)),
    ("junction-v", (-8,), (0, 1)),
    ("crossing", (9,), (1, 0)),
])
def test_expansion_matches_direct_dp(kind, params, ins):
    alpha = 8
    t = build_template(kind, alpha, params)
    direct = solve_tile_branching(t.problem(0, ins))
    grown = solve_tile(kind, alpha, params, ins)
    assert grown.length == direct.length
    assert grown.output_parities == direct.output_parities
    assert check_tile_solution(t, grown, ins) == []


def test_crossing_rejects_small_gap():
    with pytest.raises(ValueError):
        solve_tile("crossing", 8, (3,), (1, 1))
