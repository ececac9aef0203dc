"""Kraft-equality feasibility and the all-at-root construction."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .model import ORIGIN, ROOT, EmbeddedSolution, Instance, Topology


@dataclass(frozen=True)
class KraftResult:
    numerator: int
    denominator: int

    @property
    def feasible(self) -> bool:
        return self.numerator == self.denominator

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


class Infeasible(Exception):
    """The depth multiset admits no binary tree."""

    def __init__(self, kraft: KraftResult):
        super().__init__(f"infeasible: Kraft sum {kraft} != 1")
        self.kraft = kraft


def kraft_check(depths: Sequence[int]) -> KraftResult:
    depths = list(depths)
    if not depths:
        raise ValueError("empty depth multiset")
    if min(depths) < 0:
        raise ValueError("depths must be non-negative")
    top = max(depths)
    num = sum(1 << (top - d) for d in depths)
    den = 1 << top
    g = gcd(num, den)
    return KraftResult(num // g, den // g)


def slot(i: int) -> str:
    return f"slot{i}"


def build_depth_topology(depths: Sequence[int]) -> Topology:
    """Binary tree whose leaf ``slot{i}`` sits at depth ``depths[i]``.

    Leaves are merged bottom-up, two at a time, always pairing the items with
    the smallest leaf-slot index within the deepest level.
    """
    kraft = kraft_check(depths)
    if not kraft.feasible:
        raise Infeasible(kraft)
    levels: dict[int, list[tuple[int, str]]] = {}
    for i, d in enumerate(depths):
        levels.setdefault(d, []).append((i, slot(i)))
    children: dict[str, tuple[str, str]] = {}
    for d in range(max(depths), 0, -1):
        items = sorted(levels.pop(d, []))
        for a, b in zip(items[::2], items[1::2]):
            name = f"_m{len(children)}"
            children[name] = (a[1], b[1])
            levels.setdefault(d - 1, []).append((a[0], name))
    (_, top), = levels[0]

    # rename merged nodes top-down so the root's child is s1
    rename, order, stack = {}, [], [top]
    while stack:
        v = stack.pop()
        if v in children:
            rename[v] = f"s{len(rename) + 1}"
            order.append(v)
            stack.extend(reversed(children[v]))
    kids = {ROOT: (rename.get(top, top),)}
    for v in order:
        kids[rename[v]] = tuple(rename.get(c, c) for c in children[v])
    return Topology(kids)


def assign_terminals(topo: Topology, inst: Instance) -> Topology:
    """Replace ``slot{i}`` leaves by the ids of the instance's terminals."""
    ids = {slot(i): t.id for i, t in enumerate(inst.terminals)}
    return Topology({p: tuple(ids.get(c, c) for c in kids)
                     for p, kids in topo.children.items()}, topo.root)


def trivial_solution(inst: Instance) -> EmbeddedSolution:
    topo = assign_terminals(build_depth_topology(inst.depths), inst)
    placement = {v: ORIGIN for v in topo.nodes()}
    for t in inst.terminals:
        placement[t.id] = t.position
    return EmbeddedSolution.build(topo, placement)
