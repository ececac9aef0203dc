import random
from collections import Counter
from dataclasses import replace
from itertools import product

import pytest

from drsa.feasibility import kraft_check
from drsa.model import validate_instance
from drsa.reduction.layout import DepthSolveError, TileGrid, compile_reduction
from drsa.reduction.params import (ALPHA_MIN, AlphaTooSmall, band_width, default_parameters,
                                   desk_parameters, grid_side, length_bands)
from drsa.reduction.realize import build_realization, lower_bound
from drsa.reduction.sat import (EXAMPLE_3_5, Max2SatInstance, SatBudgetExceeded,
                                SatFormatError, format_dimacs, max2sat_bruteforce, parse_dimacs)


def test_parse_and_format_dimacs():
    sat = parse_dimacs("c demo\np cnf 2 2\n1 2 0\n-1 2 0\n")
    assert sat.n == 2 and sat.clauses == ((1, 2), (-1, 2))
    assert parse_dimacs(format_dimacs(sat)) == sat


@pytest.mark.parametrize("text,msg", [
    ("p cnf 2 1\n1 2 -1 0\n", "not 2-CNF"),
    ("p cnf 2 1\n1 3 0\n", "exceeds"),
    ("1 2 0\n", "header"),
    ("p cnf 2 2\n1 2 0\n", "declares"),
    ("p cnf 2 1\n1 x 0\n", "line 2"),
])
def test_parse_errors(text, msg):
    with pytest.raises(SatFormatError, match=msg):
        parse_dimacs(text)


def test_bruteforce_example():
    assignment, count = max2sat_bruteforce(EXAMPLE_3_5)
    assert count == 4
    assert assignment == (False, False, False)
    assert EXAMPLE_3_5.satisfied((True, False, True)) == 4


def test_bruteforce_budget():
    with pytest.raises(SatBudgetExceeded, match="budget-exceeded"):
        max2sat_bruteforce(Max2SatInstance(25, ((1, 2),)))


def test_default_parameters():
    p = default_parameters(3, 5)
    assert (p.alpha, p.beta) == (50625, 4500)
    assert p.gamma_min == 15 ** 3 + 1 and p.gamma_max == 4 * 15 ** 3 - 1
    assert grid_side(3, 5) == 12
    with pytest.raises(AlphaTooSmall, match="alpha-too-small"):
        default_parameters(1, 1).check()


def test_bands_are_disjoint():
    n, m, beta = 3, 5, desk_parameters(3, 5).beta
    bands = [length_bands(u, 1000, n, m, beta) for u in range(m + 1)]
    assert all(hi - lo == band_width(n, m) for lo, hi in bands)
    assert all(a[1] < b[0] for a, b in zip(bands, bands[1:]))


def test_alpha_min_constant():
    assert ALPHA_MIN == 2


def test_single_clause_with_alpha_override():
    sat = Max2SatInstance(1, ((1, -1),))
    params = replace(default_parameters(1, 1), alpha=50, variable_depth=None)
    grid, inst = compile_reduction(sat, params)
    assert validate_instance(inst).ok
    assert kraft_check(inst.depths).feasible
    with pytest.raises(DepthSolveError):
        compile_reduction(sat, default_parameters(1, 1).with_overrides(alpha=50))


def test_example_tile_multiset():
    params = desk_parameters(3, 5)
    grid, inst = compile_reduction(EXAMPLE_3_5, params)
    kinds = Counter(c.kind.split("-")[0] for c in grid.cells.values())
    assert kinds["splitter"] == 14
    assert kinds["clause"] == 5
    assert kinds["variable"] == 3
    assert kinds["root"] == 1
    assert kinds["crossing"] == 26
    assert kraft_check(inst.depths).feasible


def test_grid_sidecar_round_trip():
    sat = Max2SatInstance(2, ((1, 2), (-1, 2)))
    grid, inst = compile_reduction(sat, replace(desk_parameters(2, 2), alpha=60))
    again = TileGrid.from_json(grid.to_json())
    assert again.instance() == inst
    assert again.to_json() == grid.to_json()


def random_sat(rng, n, m):
    return Max2SatInstance(n, tuple(
        tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(2)) for _ in range(m)))


@pytest.mark.parametrize("seed", range(4))
def test_random_realizations_verify(seed):
    rng = random.Random(seed)
    sat = random_sat(rng, 2, rng.randint(1, 3))
    grid, inst = compile_reduction(sat, replace(desk_parameters(sat.n, sat.m), alpha=60))
    L = lower_bound(grid)
    for bits in product((False, True), repeat=sat.n):
        real = build_realization(grid, inst, bits)  # verifies the stitched solution
        assert real.u == sat.m - sat.satisfied(bits)
        assert real.length >= L
