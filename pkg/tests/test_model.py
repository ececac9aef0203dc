import pytest

from drsa.model import (ORIGIN, EmbeddedSolution, FormatError, Instance, MalformedSolution,
                        Point, Topology, format_instance, format_solution, hanan_grid,
                        parse_instance, parse_solution, validate_instance, verify_solution)

from conftest import SAMPLE_TERMINALS, sample_solution_text


def two_terminal():
    return Instance.from_tuples([(2, 0, 1), (0, 2, 1)])


def good_solution():
    topo = Topology({"r": ("s1",), "s1": ("t1", "t2")})
    return EmbeddedSolution.build(topo, {"s1": ORIGIN, "t1": Point(2, 0), "t2": Point(0, 2)})


def test_point_helpers():
    assert Point(3, 4).norm() == 7
    assert Point(1, 1).dist(Point(4, -1)) == 5
    assert Point(2, 3).dominates(Point(1, 3))
    assert not Point(2, 3).dominates(Point(3, 0))


def test_validate_instance_ok_and_ids():
    assert validate_instance(two_terminal()).ok
    bad = validate_instance(Instance.from_tuples([(-1, 3, 2)]))
    assert "first-quadrant" in bad.ids()
    bad = validate_instance(Instance.from_tuples([(0, 0, 0), (1, 1, 1)]))
    assert not bad.ok


def test_verify_good_solution():
    report = verify_solution(two_terminal(), good_solution())
    assert report.ok, report
    assert good_solution().length == 4


def test_verify_detects_depth_and_length():
    sol = good_solution()
    inst = Instance.from_tuples([(2, 0, 2), (0, 2, 1)])
    assert "depth" in verify_solution(inst, sol).ids()
    liar = EmbeddedSolution(sol.topology, sol.placement, 5)
    assert "length" in verify_solution(two_terminal(), liar).ids()


def test_verify_detects_detour():
    topo = Topology({"r": ("s1",), "s1": ("t1", "t2")})
    sol = EmbeddedSolution.build(topo, {"s1": Point(0, 3), "t1": Point(2, 0), "t2": Point(0, 2)})
    assert "shortest-path" in verify_solution(two_terminal(), sol).ids()


def test_verify_missing_position_is_malformed():
    topo = Topology({"r": ("s1",), "s1": ("t1", "t2")})
    sol = EmbeddedSolution(topo, {"r": ORIGIN, "t1": Point(2, 0), "t2": Point(0, 2)}, 4)
    with pytest.raises(MalformedSolution):
        verify_solution(two_terminal(), sol)


def test_hanan_grid():
    pts = hanan_grid([Point(0, 0), Point(2, 3)])
    assert sorted(pts) == [Point(0, 0), Point(0, 3), Point(2, 0), Point(2, 3)]
    with pytest.raises(ValueError):
        hanan_grid([])


def test_instance_round_trip():
    inst = Instance.from_tuples([(2, 0, 1), (0, 2, 1), (3, 3, 2)])
    again = parse_instance(format_instance(inst))
    assert [(t.position, t.depth) for t in again] == [(t.position, t.depth) for t in inst]


def test_instance_parse_errors():
    with pytest.raises(FormatError):
        parse_instance("DRSA 1\nt 1 x 2\n")
    with pytest.raises(FormatError):
        parse_instance("nonsense\n")


def test_solution_round_trip():
    sol = good_solution()
    again = parse_solution(format_solution(sol))
    assert again.length == sol.length
    assert again.placement == sol.placement
    assert sorted(again.topology.edges()) == sorted(sol.topology.edges())


def test_sample_verifies_outside_first_quadrant():
    inst = Instance.from_tuples(SAMPLE_TERMINALS)
    assert "first-quadrant" in validate_instance(inst).ids()
    sol = parse_solution(sample_solution_text())
    report = verify_solution(inst, sol)
    assert report.ok, report
    assert sol.length == 14
