"""Compile a Max-2-Sat instance into a DRRSA instance on a grid of tiles.

Grid cells are addressed as (col, row), both 0..N-1 with N = 1 + m + 2n.
Clause i sits on (i, i), variable j on (v, v) with v = m + 2j; the line
s = v - 1 carries the literal trunks. Signals flow left and down towards the
root cell (0, 0).

* x_j runs left along row v. A clause whose first literal is x_j is fed by a
  splitter on (i, v) turning down column i. If x_j is some clause's second
  literal, a trunk splitter on (s, v) turns down column s, where splitters
  turn left along row i.
* not x_j runs down column v. Second-literal occurrences are served by
  splitters on (v, i); first-literal occurrences by a trunk splitter on (v, s)
  turning left along row s, where splitters turn down column i.
* Clause outputs continue down their column. Every open line ends on row 0
  or column 0, whose cells chain the lines together (corner, junction and
  connection tiles) towards the root cell.

Cell (c, r) has its lower-left corner at (c*S - 2a, r*S - 2a) with S = 4a+2,
which puts the root cell's (2a, 2a) on the origin.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from ..feasibility import kraft_check
from ..model import Instance, Point, validate_instance
from .gadgets import GadgetTemplate
from .params import Parameters, grid_side
from .sat import Max2SatInstance
from .tilesolve import CROSSING_GAP, build_template

SIDES = {1: "left", 2: "bottom", 3: "right", 4: "top"}
STEP = {"right": (1, 0), "top": (0, 1)}
FACING = {"right": "left", "top": "bottom"}
GRID_FORMAT = "drsa-grid 1"


class WiringError(RuntimeError):
    pass


class DepthSolveError(ValueError):
    pass


@dataclass
class Cell:
    col: int
    row: int
    kind: str
    params: tuple = ()
    k: int = 0
    labels: dict = field(default_factory=dict)  # output side -> signal label
    final: tuple | None = None  # splitters feeding a clause: (clause, input side)

    @property
    def pos(self) -> tuple[int, int]:
        return self.col, self.row


@lru_cache(maxsize=None)
def _sides(kind: str):
    t = build_template(kind, 2, _probe_params(kind))
    return ([SIDES[p.index] if p.index else "root" for p in t.inputs],
            [SIDES[p.index] if p.index else "root" for p in t.outputs])


def _probe_params(kind):
    return {"crossing": (7,), "clause": (1,), "splitter-h": (1,), "splitter-v": (1,),
            "junction-h": (0,), "junction-v": (0,), "root": (5, 5)}.get(kind, ())


# ---------------------------------------------------------------- routing
def route(sat: Max2SatInstance) -> dict[tuple[int, int], Cell]:
    n, m = sat.n, sat.m
    N = grid_side(n, m)
    roles: dict[tuple[int, int], dict] = {}

    def put(c, r, axis, role):
        slot = roles.setdefault((c, r), {})
        if axis in slot or "fixed" in slot:
            raise WiringError(f"wiring bug: two {axis} signals on cell ({c},{r})")
        slot[axis] = role

    for i in range(1, m + 1):
        roles[(i, i)] = {"fixed": ("clause", f"C{i}")}
    for j in range(1, n + 1):
        roles[(m + 2 * j, m + 2 * j)] = {"fixed": ("variable", j)}

    first = {j: [] for j in range(-n, n + 1)}
    second = {j: [] for j in range(-n, n + 1)}
    for i, (a, b) in enumerate(sat.clauses, 1):
        first[a].append(i)
        second[b].append(i)

    col_ends, row_ends = set(), set()

    def hline(r, start, stop, label, splits):
        """Row r from column ``start`` leftwards while column > ``stop``."""
        for c in range(start, stop, -1):
            put(c, r, "h", splits.get(c, ("pass", label)))
        if stop == 0:
            row_ends.add(r)

    def vline(c, start, stop, label, splits):
        for r in range(start, stop, -1):
            put(c, r, "v", splits.get(r, ("pass", label)))
        if stop == 0:
            col_ends.add(c)

    for j in range(1, n + 1):
        v, s = m + 2 * j, m + 2 * j - 1
        pos, neg = f"+{j}", f"-{j}"
        # positive literal along row v
        splits = {i: ("split", pos, (i, "top")) for i in first[j]}
        if second[j]:
            splits[s] = ("split", pos, None)
            vline(s, v - 1, 0, pos, {i: ("split", pos, (i, "right")) for i in second[j]})
            for i in second[j]:
                hline(i, s - 1, i, pos, {})
        hline(v, v - 1, 0, pos, splits)
        for i in first[j]:
            vline(i, v - 1, i, pos, {})
        # negative literal down column v
        splits = {i: ("split", neg, (i, "right")) for i in second[-j]}
        if first[-j]:
            splits[s] = ("split", neg, None)
            hline(s, v - 1, 0, neg, {i: ("split", neg, (i, "top")) for i in first[-j]})
            for i in first[-j]:
                vline(i, s - 1, i, neg, {})
        vline(v, v - 1, 0, neg, splits)
        for i in second[-j]:
            hline(i, v - 1, i, neg, {})
    for i in range(1, m + 1):
        vline(i, i - 1, 0, f"C{i}", {})

    cells: dict[tuple[int, int], Cell] = {}
    for (c, r), slot in roles.items():
        if "fixed" in slot:
            kind, tag = slot["fixed"]
            labels = {"bottom": f"C{tag[1:]}"} if kind == "clause" else \
                {"left": f"+{tag}", "bottom": f"-{tag}"}
            cells[(c, r)] = Cell(c, r, kind, labels=labels)
            continue
        h, v = slot.get("h"), slot.get("v")
        if h and v:
            if h[0] != "pass" or v[0] != "pass":
                raise WiringError(f"wiring bug: splitter on a crossing at ({c},{r})")
            cells[(c, r)] = Cell(c, r, "crossing", labels={"left": h[1], "bottom": v[1]})
        elif h:
            kind = "connection-h" if h[0] == "pass" else "splitter-h"
            cells[(c, r)] = Cell(c, r, kind, labels={"left": h[1], "bottom": h[1]},
                                 final=h[2] if h[0] == "split" else None)
        else:
            kind = "connection-v" if v[0] == "pass" else "splitter-v"
            cells[(c, r)] = Cell(c, r, kind, labels={"left": v[1], "bottom": v[1]},
                                 final=v[2] if v[0] == "split" else None)

    # border chains
    started = False
    for c in range(N - 1, 0, -1):
        if c in col_ends:
            kind = "junction-h" if started else "corner-h"
            started = True
        elif started:
            kind = "connection-h"
        else:
            continue
        cells[(c, 0)] = Cell(c, 0, kind, labels={"left": "aux"})
    started = False
    for r in range(N - 1, 0, -1):
        if r in row_ends:
            kind = "junction-v" if started else "corner-v"
            started = True
        elif started:
            kind = "connection-v"
        else:
            continue
        cells[(0, r)] = Cell(0, r, kind, labels={"bottom": "aux"})
    cells[(0, 0)] = Cell(0, 0, "root", labels={"root": "root"})
    return cells


# ----------------------------------------------------------------- depths
def _order(cells):
    return sorted(cells, key=lambda p: (-(p[0] + p[1]), -p[0]))


def _inputs(cells, cell, out_depth):
    got = {}
    ins, _ = _sides(cell.kind)
    for side in ins:
        dc, dr = STEP[side]
        key = (cell.col + dc, cell.row + dr, FACING[side])
        if key not in out_depth:
            raise WiringError(f"wiring bug: nothing feeds the {side} input of ({cell.col},{cell.row})")
        got[side] = out_depth[key]
    return got


def _assign(cell, d, beta, gamma):
    """Reference depth and parameters of ``cell`` from its input depths."""
    kind = cell.kind
    if kind == "variable":
        return d["K"], ()
    if kind in ("connection-h", "splitter-h"):
        k = d["right"]
    elif kind in ("connection-v", "splitter-v", "corner-h"):
        k = d["top"]
    elif kind == "corner-v":
        k = d["right"]
    elif kind == "crossing":
        return d["right"], (d["top"] - d["right"],)
    elif kind == "clause":
        return d["right"], (beta,)
    elif kind == "junction-h":
        return d["right"], (d["top"] - d["right"],)
    elif kind == "junction-v":
        return d["top"], (d["right"] - d["top"],)
    elif kind == "root":
        return d["right"], (d["right"], d["top"])
    else:
        raise ValueError(kind)
    if kind.startswith("splitter"):
        return k, (gamma(cell),)
    return k, ()


def propagate(cells, K, beta, gamma):
    """Fill in every cell's depth and parameters; returns clause input depths."""
    out_depth = {}
    arrivals = {}
    for key in _order(cells):
        cell = cells[key]
        d = {"K": K} if cell.kind == "variable" else _inputs(cells, cell, out_depth)
        if cell.kind == "clause":
            arrivals[cell.col] = (d["right"], d["top"])
        cell.k, cell.params = _assign(cell, d, beta, gamma)
        if cell.kind == "root":
            continue
        t = build_template(cell.kind, 2, cell.params)
        for spec in t.outputs:
            side = SIDES.get(spec.index, "root")
            out_depth[(cell.col, cell.row, side)] = cell.k + spec.depth
    return arrivals


@dataclass
class TileGrid:
    sat: Max2SatInstance
    params: Parameters
    cells: dict
    K: int
    T: int

    @property
    def side(self) -> int:
        return grid_side(self.sat.n, self.sat.m)

    def template(self, cell: Cell, alpha: int | None = None) -> GadgetTemplate:
        return build_template(cell.kind, alpha or self.params.alpha, cell.params)

    def origin(self, cell: Cell) -> Point:
        S, a = self.params.side, self.params.alpha
        return Point(cell.col * S - 2 * a, cell.row * S - 2 * a)

    def ordered(self) -> list[Cell]:
        """Cells in signal order: every producer before its consumers."""
        return [self.cells[k] for k in _order(self.cells)]

    def wires(self):
        """(producer, output side, consumer, input side, label) for every adjacency."""
        out = []
        for cell in self.ordered():
            ins, _ = _sides(cell.kind)
            for side in ins:
                dc, dr = STEP[side]
                src = self.cells[(cell.col + dc, cell.row + dr)]
                out.append((src.pos, FACING[side], cell.pos, side, src.labels.get(FACING[side], "")))
        return out

    def gammas(self) -> dict:
        return {c.pos: c.params[0] for c in self.cells.values() if c.kind.startswith("splitter")}

    def double_count(self) -> int:
        return sum(self.template(c, 2).double_count() for c in self.cells.values())

    def terminals(self):
        """(cell, label, position, depth) in emission order."""
        for cell in sorted(self.cells.values(), key=lambda c: (c.row, c.col)):
            t = self.template(cell)
            o = self.origin(cell)
            for s in t.terminals:
                yield cell, s.label, Point(o.x + s.offset.x, o.y + s.offset.y), cell.k + s.depth

    def instance(self) -> Instance:
        return Instance.from_tuples([(p.x, p.y, d) for _, _, p, d in self.terminals()])

    def terminal_ids(self) -> dict:
        return {(c.pos, lab): f"t{i}" for i, (c, lab, _, _) in enumerate(self.terminals(), 1)}

    # ------------------------------------------------------------ sidecar
    def to_json(self) -> str:
        p = self.params
        doc = {
            "format": GRID_FORMAT,
            "n": self.sat.n,
            "clauses": [list(c) for c in self.sat.clauses],
            "params": {"alpha": p.alpha, "beta": p.beta, "gamma_min": p.gamma_min,
                       "gamma_max": p.gamma_max, "variable_depth": p.variable_depth},
            "side": self.side,
            "variable_depth": self.K,
            "clause_depth": self.T,
            "cells": [{"col": c.col, "row": c.row, "kind": c.kind, "params": list(c.params),
                       "k": c.k, "labels": c.labels}
                      for c in sorted(self.cells.values(), key=lambda c: (c.row, c.col))],
            "wires": [{"from": list(a), "out": so, "to": list(b), "in": si, "signal": lab}
                      for a, so, b, si, lab in self.wires()],
            "gammas": [{"cell": list(k), "gamma": g} for k, g in sorted(self.gammas().items())],
        }
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "TileGrid":
        doc = json.loads(text)
        if doc.get("format") != GRID_FORMAT:
            raise ValueError(f"not a grid sidecar (expected format {GRID_FORMAT!r})")
        sat = Max2SatInstance(doc["n"], tuple(tuple(c) for c in doc["clauses"]))
        params = Parameters(**doc["params"])
        cells = {}
        for c in doc["cells"]:
            cell = Cell(c["col"], c["row"], c["kind"], tuple(c["params"]), c["k"], dict(c["labels"]))
            cells[cell.pos] = cell
        return cls(sat, params, cells, doc["variable_depth"], doc["clause_depth"])


def _crossing_conflicts(cells):
    return [c for c in cells.values()
            if c.kind == "crossing" and abs(c.params[0]) < CROSSING_GAP]


def solve_depths(sat: Max2SatInstance, params: Parameters, cells=None):
    """Choose splitter cascades so both inputs of every clause meet at one depth.

    All clauses share the input depth T. Trunk splitters get gamma_min
    (positive literal) and gamma_min + 7 (negative literal), which separates
    the two trunks where they cross. The splitter closest to each clause takes
    up the slack. T is lowered step by step until every crossing has its two
    passes at least 7 levels apart.
    """
    if cells is None:
        cells = route(sat)
    g_lo, g_hi = params.gamma_min, params.gamma_max

    def trunk(cell):
        return g_lo if cell.labels["left"].startswith("+") else g_lo + CROSSING_GAP

    def measure(cell):
        return g_lo if cell.final else trunk(cell)

    arrivals = propagate(cells, 0, params.beta, measure)
    lo = {}
    for cell in cells.values():
        if cell.final:
            clause, side = cell.final
            lo[cell.pos] = arrivals[clause][0 if side == "right" else 1]
    t_max = min(lo.values()) if lo else 0
    last = "no clauses"
    for T in range(t_max, t_max - 50 * grid_side(sat.n, sat.m) - 50, -1):
        gam = {pos: g_lo + a - T for pos, a in lo.items()}
        bad = [pos for pos, g in gam.items() if g > g_hi]
        if bad:
            c = cells[bad[0]]
            raise DepthSolveError(
                f"depth-solve failed: splitter at {bad[0]} on wire {c.labels['left']} needs "
                f"gamma={gam[bad[0]]} > gamma_max={g_hi}")
        propagate(cells, 0, params.beta, lambda cell: gam[cell.pos] if cell.final else trunk(cell))
        clash = _crossing_conflicts(cells)
        if not clash:
            break
        c = clash[0]
        last = (f"crossing at {c.pos} carries {c.labels['left']} and {c.labels['bottom']} "
                f"only {abs(c.params[0])} levels apart")
    else:
        raise DepthSolveError(f"depth-solve failed: {last}")

    root = cells[(0, 0)]
    kr, kt = root.params
    reach = min(kr, kt) - 3  # depth of the merge node next to the root, for K = 0
    if params.variable_depth is None:
        K = -reach
    else:
        K = params.variable_depth
        if K + reach < 0:
            raise DepthSolveError(
                f"depth-solve failed: variable depth {K} is {-(K + reach)} levels too shallow "
                f"to reach the root")
    propagate(cells, K, params.beta, lambda cell: gam[cell.pos] if cell.final else trunk(cell))
    return cells, K, T


def compile_reduction(sat: Max2SatInstance, params: Parameters) -> tuple[TileGrid, Instance]:
    params.check()
    cells, K, T = solve_depths(sat, params)
    grid = TileGrid(sat, params, cells, K, T)
    inst = grid.instance()
    report = validate_instance(inst)
    if not report.ok:
        raise WiringError(f"wiring bug: emitted instance is invalid\n{report}")
    kraft = kraft_check(inst.depths)
    if not kraft.feasible:
        raise WiringError(f"wiring bug: Kraft sum {kraft} != 1")
    return grid, inst
