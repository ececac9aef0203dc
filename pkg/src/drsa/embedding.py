"""Optimal placement of Steiner nodes for a fixed topology.

With the root at the origin and every terminal in the first quadrant, a
Steiner node is best placed at the componentwise minimum of its two children.
Applying the rule leaves-upward gives a minimum-length embedding.
"""
from __future__ import annotations

from .model import (ORIGIN, EmbeddedSolution, Instance, Point, Topology,
                    validate_instance)


class BindingError(ValueError):
    pass


def check_binding(inst: Instance, topo: Topology) -> None:
    terms = inst.by_id()
    leaves = topo.leaves()
    if sorted(leaves) != sorted(terms):
        raise BindingError("binding: topology leaves do not match the instance terminals")
    if len(topo.kids(topo.root)) != 1:
        raise BindingError("binding: root must have exactly one child")
    for v in topo.internal():
        if len(topo.kids(v)) != 2:
            raise BindingError(f"binding: Steiner node {v} is not binary")
    depth = topo.depth_map()
    for t in inst.terminals:
        if depth[t.id] != t.depth:
            raise BindingError(f"binding: terminal {t.id} sits at depth {depth[t.id]}, requires {t.depth}")


def optimal_embed(inst: Instance, topo: Topology) -> EmbeddedSolution:
    report = validate_instance(inst)
    if not report.ok:
        raise BindingError(f"binding: invalid instance\n{report}")
    check_binding(inst, topo)
    pos: dict[str, Point] = {t.id: t.position for t in inst.terminals}
    for v in reversed(topo.preorder()):
        if v in pos or v == topo.root:
            continue
        a, b = (pos[c] for c in topo.kids(v))
        pos[v] = Point(min(a.x, b.x), min(a.y, b.y))
    pos[topo.root] = ORIGIN
    return EmbeddedSolution.build(topo, pos)
