"""Exact solving by topology enumeration plus optimal embedding."""
from __future__ import annotations

from typing import Iterator, Sequence

from .embedding import optimal_embed
from .feasibility import Infeasible, kraft_check
from .model import (ROOT, EmbeddedSolution, Instance, Topology,
                    validate_instance)

DEFAULT_BUDGET = 10 ** 7


class BudgetExceeded(RuntimeError):
    pass


def _splits(items: Sequence[int], weight: dict[int, int], target: int):
    """Subsets of ``items`` containing ``items[0]`` whose weights sum to ``target``.

    Yields (chosen, rest) as tuples preserving the input order.
    """
    first, tail = items[0], items[1:]
    need = target - weight[first]
    if need < 0:
        return
    order = sorted(range(len(tail)), key=lambda i: -weight[tail[i]])
    suffix = [0] * (len(order) + 1)
    for j in range(len(order) - 1, -1, -1):
        suffix[j] = suffix[j + 1] + weight[tail[order[j]]]
    picked = []

    def rec(j, left):
        if left == 0:
            chosen = set(picked)
            yield (first, *(tail[i] for i in sorted(chosen))), \
                tuple(tail[i] for i in range(len(tail)) if i not in chosen)
            return
        if j == len(order) or suffix[j] < left:
            return
        w = weight[tail[order[j]]]
        if w <= left:
            picked.append(order[j])
            yield from rec(j + 1, left - w)
            picked.pop()
        yield from rec(j + 1, left)

    yield from rec(0, need)


def _shapes(ids: tuple[int, ...], depth: int, depths: Sequence[int], top: int):
    """Unordered labelled subtrees rooted at a node of the given depth."""
    if len(ids) == 1:
        if depths[ids[0]] == depth:
            yield ids[0]
            return
    weight = {i: 1 << (top - depths[i]) for i in ids}
    half = 1 << (top - depth - 1)
    if depth >= top:
        return
    for left, right in _splits(ids, weight, half):
        if not right:
            continue
        for a in _shapes(left, depth + 1, depths, top):
            for b in _shapes(right, depth + 1, depths, top):
                yield (a, b)


def _to_topology(shape, names: Sequence[str]) -> Topology:
    kids: dict[str, tuple[str, ...]] = {}
    counter = [0]

    def walk(s):
        if isinstance(s, int):
            return names[s]
        counter[0] += 1
        me = f"s{counter[0]}"
        kids[me] = (walk(s[0]), walk(s[1]))
        return me

    kids[ROOT] = (walk(shape),)
    return Topology(kids)


def enumerate_topologies(inst: Instance) -> Iterator[Topology]:
    """Every depth-consistent topology over the instance's terminals.

    Sibling order is quotiented out: each unordered tree is produced once.
    Raises Infeasible if the depths violate Kraft equality.
    """
    depths = inst.depths
    kraft = kraft_check(depths)
    if not kraft.feasible:
        raise Infeasible(kraft)
    names = [t.id for t in inst.terminals]
    ids = tuple(range(len(depths)))
    for shape in _shapes(ids, 0, depths, max(depths)):
        yield _to_topology(shape, names)


def count_topologies(inst: Instance) -> int:
    return sum(1 for _ in enumerate_topologies(inst))


def solve_exact(inst: Instance, budget: int = DEFAULT_BUDGET) -> EmbeddedSolution:
    report = validate_instance(inst)
    if not report.ok:
        raise ValueError(f"invalid instance\n{report}")
    best = None
    best_key = None
    for n, topo in enumerate(enumerate_topologies(inst), 1):
        if n > budget:
            raise BudgetExceeded(f"budget-exceeded: more than {budget} topologies")
        sol = optimal_embed(inst, topo)
        key = (sol.length, sol.edge_key())
        if best_key is None or key < best_key:
            best, best_key = sol, key
    return best
