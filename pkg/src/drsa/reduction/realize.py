"""Realizations: the solution induced by a truth assignment.

The variable tiles fix the parities of their outputs (left output on ``o``
means true). Parities travel unchanged through connection, crossing and
splitter tiles; clause, junction and root tiles take their cheapest output.
Each tile contributes its shortest branching for those parities, and the
branchings are glued at shared boundary Steiner points.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..model import ROOT, EmbeddedSolution, Instance, Point, Topology, verify_solution
from .layout import SIDES, STEP, FACING, TileGrid, WiringError
from .tilesolve import check_tile_solution, solve_tile


@dataclass
class Realization:
    assignment: tuple[bool, ...]
    solution: EmbeddedSolution
    u: int
    length: int
    tile_lengths: dict


def _side_of(spec) -> str:
    return SIDES.get(spec.index, "root")


def _output_rule(kind: str, ins: tuple, assignment, cell) -> tuple | None:
    if kind == "variable":
        j = int(cell.labels["left"][1:])
        return (1, 0) if assignment[j - 1] else (0, 1)
    if kind in ("connection-h", "connection-v", "corner-h", "corner-v", "crossing"):
        return ins
    if kind.startswith("splitter"):
        return ins * 2
    return None


def tile_minimum(grid: TileGrid, cell) -> int:
    """Shortest branching of ``cell`` over all input and output parities."""
    t = grid.template(cell, 2)
    best = None
    for ins in product((1, 0), repeat=len(t.inputs)):
        try:
            got = solve_tile(cell.kind, grid.params.alpha, cell.params, ins).length
        except ValueError:
            continue
        best = got if best is None else min(best, got)
    if best is None:
        raise WiringError(f"no branching at all for cell {cell.pos}")
    return best


def lower_bound(grid: TileGrid) -> int:
    """L: the sum over tiles of their minimum connection length."""
    return sum(tile_minimum(grid, c) for c in grid.ordered())


def build_realization(grid: TileGrid, inst: Instance, assignment, check: bool = True) -> Realization:
    assignment = tuple(bool(x) for x in assignment)
    if len(assignment) != grid.sat.n:
        raise ValueError(f"assignment has {len(assignment)} values, need {grid.sat.n}")
    alpha = grid.params.alpha
    ids = grid.terminal_ids()
    parity: dict = {}  # (cell, output side) -> parity
    root_of: dict = {}  # (cell, output side) -> global node name
    placement: dict[str, Point] = {}
    children: dict[str, tuple[str, ...]] = {}
    lengths = {}
    u = 0
    for cell in grid.ordered():
        t = grid.template(cell)
        o = grid.origin(cell)
        feeds = {}
        for spec in t.inputs:
            side = _side_of(spec)
            dc, dr = STEP[side]
            feeds[spec.name] = ((cell.col + dc, cell.row + dr), FACING[side])
        ins = tuple(parity[feeds[spec.name]] for spec in t.inputs)
        if cell.kind == "clause" and ins == (0, 0):
            u += 1
        outs = _output_rule(cell.kind, ins, assignment, cell)
        sol = solve_tile(cell.kind, alpha, cell.params, ins, outs)
        if check:
            errs = check_tile_solution(t, sol, ins)
            if errs:
                raise WiringError(f"wiring bug: tile {cell.pos} branching: {errs[0]}")
        lengths[cell.pos] = sol.length
        name = {}
        for v, p in sol.nodes.items():
            lab = sol.leaf.get(v)
            if lab is None:
                name[v] = f"c{cell.col}_{cell.row}.{v}"
            elif lab[0] == "term":
                name[v] = ids[(cell.pos, lab[1])]
            else:
                name[v] = root_of[feeds[lab[1]]]
            g = Point(o.x + p.x, o.y + p.y)
            if name[v] in placement and placement[name[v]] != g:
                raise WiringError(f"wiring bug: tile {cell.pos} input {lab} does not meet its producer")
            placement[name[v]] = g
        for v, kids in sol.children.items():
            children[name[v]] = tuple(name[c] for c in kids)
        for spec, par, r in zip(t.outputs, sol.output_parities, sol.roots):
            parity[(cell.pos, _side_of(spec))] = par
            root_of[(cell.pos, _side_of(spec))] = name[r]
    children[ROOT] = (root_of[((0, 0), "root")],)
    sol = EmbeddedSolution.build(Topology(children), placement)
    want = grid.sat.m - grid.sat.satisfied(assignment)
    if u != want:
        raise WiringError(f"wiring bug: {u} clauses see two false inputs, expected {want}")
    if check:
        report = verify_solution(inst, sol)
        if not report.ok:
            raise WiringError(f"wiring bug: realization fails verification\n{report}")
    return Realization(assignment, sol, u, sol.length, lengths)
