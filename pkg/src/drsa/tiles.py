"""Shortest tile branchings by subset dynamic programming.

A tile branching is a forest: one arborescence per output port, whose leaves
are the tile's terminals plus one leaf per input port (placed according to the
input's parity). Every parent sits one level above its children and weakly
below-left of them.

The DP runs over (leaf subset, grid point). A subset can only hang below a
single node if its Kraft weight is a power of two, which fixes the node's
depth and prunes almost every subset.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .model import Point, hanan_grid

INF = float("inf")


class NoConnection(ValueError):
    pass


@dataclass(frozen=True)
class Port:
    """A boundary port. ``o`` is the terminal position, ``o_hat`` its neighbour.

    Parity 1 puts the boundary Steiner point on ``o``, parity 0 on ``o_hat``.
    ``depth`` is the depth of that Steiner point.
    """

    role: str  # "input" | "output"
    side: str  # "left" | "bottom" | "right" | "top"
    o: Point
    o_hat: Point
    depth: int
    parity: int | None = None

    def at(self, parity: int) -> Point:
        return self.o if parity == 1 else self.o_hat


@dataclass(frozen=True)
class TileProblem:
    width: int
    height: int
    terminals: tuple[tuple[Point, int], ...]
    ports: tuple[Port, ...]
    labels: tuple[str, ...] = ()

    @property
    def inputs(self) -> list[Port]:
        return [p for p in self.ports if p.role == "input"]

    @property
    def outputs(self) -> list[Port]:
        return [p for p in self.ports if p.role == "output"]


@dataclass
class BranchingResult:
    length: int
    output_parities: tuple[int, ...]
    # per output: (positions of nodes, child lists, node kinds)
    nodes: dict = field(default_factory=dict)
    children: dict = field(default_factory=dict)
    roots: tuple = ()

    def edges(self):
        return [(p, c) for p, kids in self.children.items() for c in kids]


class _Solver:
    def __init__(self, points: Sequence[Point], leaves: Sequence[tuple[Point, int]]):
        self.leaves = list(leaves)
        self.xs = sorted({p.x for p in points})
        self.ys = sorted({p.y for p in points})
        self.ix = {x: i for i, x in enumerate(self.xs)}
        self.iy = {y: i for i, y in enumerate(self.ys)}
        nx, ny = len(self.xs), len(self.ys)
        X = np.array(self.xs, dtype=float)[:, None] * np.ones((1, ny))
        Y = np.ones((nx, 1)) * np.array(self.ys, dtype=float)[None, :]
        self.coord_sum = X + Y
        self.top = max(d for _, d in leaves)
        self.weight = [1 << (self.top - d) for _, d in leaves]
        self.F: dict[int, np.ndarray] = {}
        self.G: dict[int, np.ndarray] = {}
        self.shape = (nx, ny)

    def mask_weight(self, mask: int) -> int:
        w, i = 0, 0
        while mask:
            if mask & 1:
                w += self.weight[i]
            mask >>= 1
            i += 1
        return w

    def members(self, mask: int) -> list[int]:
        return [i for i in range(len(self.leaves)) if mask >> i & 1]

    def splits(self, mask: int, target: int):
        """Masks ``a`` with ``a ⊂ mask``, containing the lowest member,
        weight ``target``; the complement has the same weight."""
        items = self.members(mask)
        first, tail = items[0], items[1:]
        tail.sort(key=lambda i: -self.weight[i])
        suffix = [0] * (len(tail) + 1)
        for j in range(len(tail) - 1, -1, -1):
            suffix[j] = suffix[j + 1] + self.weight[tail[j]]
        out = []

        def rec(j, left, acc):
            if left == 0:
                out.append(acc)
                return
            if j == len(tail) or suffix[j] < left:
                return
            w = self.weight[tail[j]]
            if w <= left:
                rec(j + 1, left - w, acc | 1 << tail[j])
            rec(j + 1, left, acc)

        need = target - self.weight[first]
        if need >= 0:
            rec(0, need, 1 << first)
        return [a for a in out if a != mask]

    def f(self, mask: int) -> np.ndarray:
        """Cost of a subtree covering ``mask`` whose top node sits at each point."""
        got = self.F.get(mask)
        if got is not None:
            return got
        arr = np.full(self.shape, INF)
        if mask & (mask - 1) == 0:
            i = mask.bit_length() - 1
            p, _ = self.leaves[i]
            arr[self.ix[p.x], self.iy[p.y]] = 0.0
        else:
            w = self.mask_weight(mask)
            if w & (w - 1) == 0 and w % 2 == 0:
                for a in self.splits(mask, w // 2):
                    np.minimum(arr, self.g(a) + self.g(mask ^ a), out=arr)
        self.F[mask] = arr
        return arr

    def g(self, mask: int) -> np.ndarray:
        """Cost of the subtree plus an edge into its top node from each point."""
        got = self.G.get(mask)
        if got is not None:
            return got
        h = self.f(mask) + self.coord_sum
        h = np.minimum.accumulate(h[::-1, :], axis=0)[::-1, :]
        h = np.minimum.accumulate(h[:, ::-1], axis=1)[:, ::-1]
        arr = h - self.coord_sum
        self.G[mask] = arr
        return arr

    def at(self, arr: np.ndarray, p: Point) -> float:
        return float(arr[self.ix[p.x], self.iy[p.y]])

    # ------------------------------------------------------------ rebuild
    def rebuild(self, mask: int, p: Point, nodes: dict, children: dict, prefix: str) -> str:
        """Materialise an optimal subtree for ``mask`` with its top at ``p``."""
        if mask & (mask - 1) == 0:
            i = mask.bit_length() - 1
            name = f"leaf{i}"
            nodes[name] = self.leaves[i][0]
            return name
        target = self.at(self.f(mask), p)
        w = self.mask_weight(mask)
        for a in self.splits(mask, w // 2):
            b = mask ^ a
            if self.at(self.g(a), p) + self.at(self.g(b), p) == target:
                name = f"{prefix}{len(nodes)}"
                nodes[name] = p
                kids = []
                for sub in (a, b):
                    q = self.edge_target(sub, p)
                    kids.append(self.rebuild(sub, q, nodes, children, prefix))
                children[name] = tuple(kids)
                return name
        raise AssertionError("DP table inconsistent")

    def edge_target(self, mask: int, p: Point) -> Point:
        want = self.at(self.g(mask), p)
        f = self.f(mask)
        for x in self.xs:
            if x < p.x:
                continue
            for y in self.ys:
                if y < p.y:
                    continue
                q = Point(x, y)
                if self.at(f, q) + q.dist(p) == want:
                    return q
        raise AssertionError("DP table inconsistent")


def tile_leaves(prob: TileProblem) -> list[tuple[Point, int]]:
    leaves = list(prob.terminals)
    for port in prob.inputs:
        if port.parity not in (0, 1):
            raise ValueError("every input needs a parity")
        leaves.append((port.at(port.parity), port.depth))
    return leaves


def tile_points(prob: TileProblem) -> list[Point]:
    pts = [p for p, _ in prob.terminals]
    for port in prob.ports:
        pts += [port.o, port.o_hat]
    return hanan_grid(pts)


def _output_partitions(solver: _Solver, full: int, outs: Sequence[Port]):
    """Assign every leaf to exactly one output, respecting Kraft weights."""
    if len(outs) == 1:
        yield (full,)
        return
    first, rest = outs[0], outs[1:]
    target = 1 << (solver.top - first.depth)
    items = solver.members(full)
    chosen = []

    def rec(j, left):
        if left == 0:
            yield sum(1 << i for i in chosen)
            return
        if j == len(items):
            return
        w = solver.weight[items[j]]
        if w <= left:
            chosen.append(items[j])
            yield from rec(j + 1, left - w)
            chosen.pop()
        yield from rec(j + 1, left)

    for sub in rec(0, target):
        for tail in _output_partitions(solver, full ^ sub, rest):
            yield (sub, *tail)


def solve_tile_branching(prob: TileProblem, output_parities: Sequence[int] | None = None,
                         all_results: bool = False):
    """Shortest tile branching.

    ``output_parities`` pins the output parities; by default each output takes
    whichever parity is cheaper (ties go to parity 1). With ``all_results`` a
    dict from output-parity tuple to length is returned instead.
    """
    leaves = tile_leaves(prob)
    outs = prob.outputs
    if not outs:
        raise ValueError("tile has no outputs")
    solver = _Solver(tile_points(prob), leaves)
    # output roots sit above the shallowest leaf; shift the reference depth
    if min(p.depth for p in outs) + 1 > solver.top:
        raise NoConnection("no-connection: outputs deeper than the leaves")
    full = (1 << len(leaves)) - 1
    parts = list(_output_partitions(solver, full, outs))

    from itertools import product
    combos = [tuple(output_parities)] if output_parities is not None else \
        list(product((1, 0), repeat=len(outs)))
    table = {}
    best = {}
    for combo in combos:
        cost_best, arg = INF, None
        for part in parts:
            total = 0.0
            for port, par, sub in zip(outs, combo, part):
                if sub == 0:
                    total = INF
                    break
                w = solver.mask_weight(sub)
                if w != 1 << (solver.top - port.depth):
                    total = INF
                    break
                # the output Steiner point needs two children
                if sub & (sub - 1) == 0:
                    total = INF
                    break
                total += solver.at(solver.f(sub), port.at(par))
            if total < cost_best:
                cost_best, arg = total, part
        table[combo] = cost_best
        best[combo] = arg
    if all_results:
        return {c: (int(v) if v < INF else None) for c, v in table.items()}
    combo = min(combos, key=lambda c: (table[c], tuple(-x for x in c)))
    if table[combo] == INF:
        raise NoConnection("no-connection: no feasible branching under the depth constraints")
    nodes, children, roots = {}, {}, []
    for j, (port, par, sub) in enumerate(zip(outs, combo, best[combo])):
        roots.append(solver.rebuild(sub, port.at(par), nodes, children, f"o{j}_s"))
    return BranchingResult(int(table[combo]), combo, nodes, children, tuple(roots))
