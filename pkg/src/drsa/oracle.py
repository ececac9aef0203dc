"""Exhaustive reference solver for tiny instances.

Independent of the exact solver: trees are grown by inserting leaves one at a
time into every edge (which produces each rooted binary tree exactly once),
and every Steiner placement on the Hanan grid of the terminals and the origin
is considered through a per-tree table over all grid points, with no
assumption about where Steiner points go.
"""
from __future__ import annotations

from .model import ORIGIN, ROOT, EmbeddedSolution, Instance, Point, Topology, hanan_grid


def _trees(n: int):
    """All rooted binary trees over leaves 0..n-1 as nested tuples."""
    if n == 1:
        yield 0
        return

    def insert(tree, leaf):
        yield (tree, leaf)
        if isinstance(tree, tuple):
            a, b = tree
            for x in insert(a, leaf):
                yield (x, b)
            for y in insert(b, leaf):
                yield (a, y)

    for t in _trees(n - 1):
        yield from insert(t, n - 1)


def _depths_ok(tree, depths, d=0) -> bool:
    if isinstance(tree, int):
        return depths[tree] == d
    return _depths_ok(tree[0], depths, d + 1) and _depths_ok(tree[1], depths, d + 1)


def brute_force(inst: Instance) -> EmbeddedSolution | None:
    """A minimum-length solution, or None when no tree fits the depths."""
    terms = inst.terminals
    grid = hanan_grid([t.position for t in terms] + [ORIGIN])
    depths = [t.depth for t in terms]
    best, best_len = None, None
    for tree in _trees(len(terms)):
        if not _depths_ok(tree, depths):
            continue
        memo = {}

        def cost(node, p):
            """Cheapest subtree below ``node`` with ``node`` placed at ``p``."""
            key = (id(node) if isinstance(node, tuple) else node, p)
            if key in memo:
                return memo[key]
            if isinstance(node, int):
                val = (0, None) if terms[node].position == p else (None, None)
            else:
                total, picks = 0, []
                for child in node:
                    opt = None
                    for q in grid:
                        if q.x < p.x or q.y < p.y:
                            continue
                        c, _ = cost(child, q)
                        if c is not None and (opt is None or c + p.dist(q) < opt[0]):
                            opt = (c + p.dist(q), q)
                    if opt is None:
                        total = None
                        break
                    total += opt[0]
                    picks.append(opt[1])
                val = (total, picks)
            memo[key] = val
            return val

        start = tree if isinstance(tree, tuple) else tree
        opt = None
        for q in grid:
            c, _ = cost(start, q)
            if c is not None and (opt is None or c + q.norm() < opt[0]):
                opt = (c + q.norm(), q)
        if opt is None:
            continue
        if best_len is None or opt[0] < best_len:
            best_len = opt[0]
            best = _materialize(tree, opt[1], cost, terms)
    return best


def _materialize(tree, p, cost, terms) -> EmbeddedSolution:
    kids, pos = {}, {}
    counter = [0]

    def walk(node, at):
        if isinstance(node, int):
            pos[terms[node].id] = at
            return terms[node].id
        counter[0] += 1
        me = f"s{counter[0]}"
        pos[me] = at
        _, picks = cost(node, at)
        kids[me] = tuple(walk(c, q) for c, q in zip(node, picks))
        return me

    kids[ROOT] = (walk(tree, p),)
    return EmbeddedSolution.build(Topology(kids), pos)
