"""Tile branchings for templates with long cascades.

A cascade of terminals on one point is absorbed by a chain of Steiner nodes.
The DP solves a copy of the template with every cascade capped at a few
members; the chain is then lengthened at its bottom end. Lengthening adds one
edge of fixed length per extra member, so optimal costs grow linearly in the
cascade size (checked against the direct DP in the tests).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ..model import Point
from ..tiles import NoConnection, solve_tile_branching
from .gadgets import (GadgetTemplate, clause_template, connection_template,
                      corner_template, crossing_template, junction_template,
                      root_template, splitter_template, variable_template)

CAP = 3
SPLITTER_CAP = 6
CROSSING_GAP = 7


@dataclass
class TileSolution:
    """A tile branching in local coordinates.

    ``leaf`` maps leaf nodes to ("term", label) or ("input", port name);
    ``roots`` lists one node per output port, in template order.
    """

    length: int
    output_parities: tuple[int, ...]
    nodes: dict
    children: dict
    roots: tuple
    leaf: dict

    def edges(self):
        return [(p, c) for p, kids in self.children.items() for c in kids]


def build_template(kind: str, alpha: int, params: tuple = ()) -> GadgetTemplate:
    if kind == "variable":
        return variable_template(alpha)
    if kind in ("connection-h", "connection-v"):
        return connection_template(alpha, kind.endswith("v"))
    if kind in ("corner-h", "corner-v"):
        return corner_template(alpha, kind.endswith("v"))
    if kind == "crossing":
        return crossing_template(alpha, *params)
    if kind == "clause":
        return clause_template(alpha, *params)
    if kind in ("splitter-h", "splitter-v"):
        return splitter_template(alpha, *params, vertical=kind.endswith("v"))
    if kind in ("junction-h", "junction-v"):
        return junction_template(alpha, *params, vertical=kind.endswith("v"))
    if kind == "root":
        return root_template(alpha, *params)
    raise ValueError(f"unknown tile kind {kind!r}")


def cascades(kind: str) -> tuple[str, ...]:
    """Label prefixes of the template's cascades."""
    return {"clause": ("S1_", "S2_"), "splitter-h": ("G",), "splitter-v": ("G",),
            "junction-h": ("M",), "junction-v": ("M",), "root": ("M", "R")}.get(kind, ())


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def capped(kind: str, params: tuple, cap: int = CAP) -> tuple:
    if kind == "clause":
        return (min(params[0], cap),)
    if kind in ("splitter-h", "splitter-v"):
        return (min(params[0], max(cap, SPLITTER_CAP)),)
    if kind in ("junction-h", "junction-v"):
        d = params[0]
        return (_sign(d) * min(abs(d), cap),)
    if kind == "crossing":
        s = params[0]
        if abs(s) < CROSSING_GAP:
            raise ValueError(f"crossing passes only {abs(s)} levels apart")
        return (_sign(s) * CROSSING_GAP,)
    if kind == "root":
        kr, kt = params
        d = kt - kr
        dc = _sign(d) * min(abs(d), cap)
        roots = kr + min(0, d) - 3
        if roots < 0:
            raise ValueError("inputs too shallow to reach the root")
        kr_c = min(roots, cap) + 3 - min(0, dc)
        return (kr_c, kr_c + dc)
    return tuple(params)


def _count(t: GadgetTemplate, prefix: str) -> int:
    return sum(1 for s in t.terminals if s.group == "cascade" and s.label.startswith(prefix)
               and s.label[len(prefix):].isdigit())


@lru_cache(maxsize=None)
def _solve_small(kind, alpha, params, input_parities, output_parities):
    t = build_template(kind, alpha, params)
    prob = t.problem(0, input_parities)
    res = solve_tile_branching(prob, output_parities)
    n = len(t.terminals)
    names = [s.label for s in t.terminals]
    inputs = [p.name for p in t.inputs]
    leaf = {}
    for v in res.nodes:
        if v.startswith("leaf"):
            i = int(v[4:])
            leaf[v] = ("term", names[i]) if i < n else ("input", inputs[i - n])
    return res, leaf


def solve_tile(kind: str, alpha: int, params: tuple = (), input_parities: tuple = (),
               output_parities: tuple | None = None) -> TileSolution:
    """Shortest branching of a tile, expanding capped cascades to full size."""
    params = tuple(params)
    small = capped(kind, params)
    if output_parities is None and small != params:
        # costs of different output parities can scale differently with the cap
        best = None
        n_out = len(build_template(kind, alpha, small).outputs)
        for outs in product((1, 0), repeat=n_out):
            try:
                sol = solve_tile(kind, alpha, params, input_parities, outs)
            except NoConnection:
                continue
            if best is None or sol.length < best.length:
                best = sol
        if best is None:
            raise NoConnection(f"{kind}: no branching for inputs {tuple(input_parities)}")
        return best
    res, leaf = _solve_small(kind, alpha, small, tuple(input_parities),
                             None if output_parities is None else tuple(output_parities))
    nodes = dict(res.nodes)
    children = {k: tuple(v) for k, v in res.children.items()}
    roots = list(res.roots)
    leaf = dict(leaf)
    if small != params:
        big_t = build_template(kind, alpha, params)
        small_t = build_template(kind, alpha, small)
        for prefix in cascades(kind):
            have, want = _count(small_t, prefix), _count(big_t, prefix)
            if want > have:
                _grow(nodes, children, roots, leaf, prefix, have, want, big_t)
    length = sum(nodes[p].dist(nodes[c]) for p, kids in children.items() for c in kids)
    return TileSolution(length, res.output_parities, nodes, children, tuple(roots), leaf)


def _grow(nodes, children, roots, leaf, prefix, have, want, big_t):
    """Lengthen the chain holding cascade ``prefix`` from ``have`` to ``want`` members."""
    bottom = next(v for v, lab in leaf.items() if lab == ("term", f"{prefix}{have - 1}"))
    parent = {c: p for p, kids in children.items() for c in kids}
    P = parent[bottom]
    PP = parent.get(P)
    spot = next(s.offset for s in big_t.terminals if s.label == f"{prefix}{have}")
    at = nodes[P]
    below = P
    for j in range(have, want):
        x = f"{prefix}x{j}"
        lf = f"{prefix}l{j}"
        nodes[x], nodes[lf] = at, Point(*spot)
        children[x] = (lf, below)
        leaf[lf] = ("term", f"{prefix}{j}")
        below = x
    if PP is None:
        roots[roots.index(P)] = below
    else:
        children[PP] = tuple(below if c == P else c for c in children[PP])


def check_tile_solution(t: GadgetTemplate, sol: TileSolution, input_parities: tuple) -> list[str]:
    """Problems with ``sol`` as a branching of template ``t`` (empty if none)."""
    from .gadgets import port_positions
    pos = port_positions(t.alpha)
    want = {("term", s.label): (s.offset, s.depth) for s in t.terminals}
    for spec, par in zip(t.inputs, input_parities):
        o, oh, _ = pos[spec.index]
        want[("input", spec.name)] = (o if par == 1 else oh, spec.depth)
    errs = []
    depth = {}
    for spec, par, r in zip(t.outputs, sol.output_parities, sol.roots):
        o, oh, _ = pos[spec.index]
        if sol.nodes[r] != (o if par == 1 else oh):
            errs.append(f"output {spec.name} root misplaced")
        depth[r] = spec.depth
        stack = [r]
        while stack:
            v = stack.pop()
            kids = sol.children.get(v, ())
            if v not in sol.leaf and len(kids) != 2:
                errs.append(f"{v} has {len(kids)} children")
            for c in kids:
                depth[c] = depth[v] + 1
                p, q = sol.nodes[v], sol.nodes[c]
                if q.x < p.x or q.y < p.y:
                    errs.append(f"edge {v}->{c} is not monotone")
                stack.append(c)
    seen = set()
    for v, lab in sol.leaf.items():
        if lab not in want:
            errs.append(f"unknown leaf {lab}")
            continue
        seen.add(lab)
        p, d = want[lab]
        if sol.nodes[v] != p or depth.get(v) != d:
            errs.append(f"leaf {lab} at {sol.nodes[v]} depth {depth.get(v)}, wants {p} depth {d}")
    for lab in set(want) - seen:
        errs.append(f"missing leaf {lab}")
    return errs
