import re

import pytest

from drsa.exact import solve_exact
from drsa.model import EmbeddedSolution, Instance, parse_solution
from drsa.render import RenderError, RenderOptions, render_svg

from conftest import SAMPLE_TERMINALS, sample_solution_text


def two_terminal():
    inst = Instance.from_tuples([(2, 0, 1), (0, 2, 1)])
    return inst, solve_exact(inst)


def test_markers_for_two_terminals():
    inst, sol = two_terminal()
    svg = render_svg(inst, sol)
    assert svg.count('class="marker root"') == 1
    assert svg.count('class="marker terminal"') == 2
    assert svg.count('class="marker steiner"') == 1


def test_deterministic_bytes():
    inst, sol = two_terminal()
    assert render_svg(inst, sol) == render_svg(inst, sol)


def test_refuses_invalid_solution():
    inst, sol = two_terminal()
    bad = EmbeddedSolution(sol.topology, sol.placement, sol.length + 1)
    with pytest.raises(RenderError):
        render_svg(inst, bad)


def test_sample_polylines():
    inst = Instance.from_tuples(SAMPLE_TERMINALS)
    svg = render_svg(inst, parse_solution(sample_solution_text()))
    assert len(re.findall(r"<polyline ", svg)) == 7
    assert svg.count('class="marker steiner"') == 3


def test_layers_and_double_markers():
    inst = Instance.from_tuples([(1, 1, 2), (1, 1, 2), (3, 0, 1)])
    svg = render_svg(inst, opts=RenderOptions(layers=("terminals", "depth-labels")))
    assert svg.count('class="marker double"') == 1
    assert "<text" in svg
    with pytest.raises(ValueError):
        RenderOptions(layers=("bogus",))
