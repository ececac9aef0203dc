"""Instances, topologies, embedded solutions and the feasibility verifier.

Coordinates are integers. The root always sits at the origin and is the node
``ROOT`` of every topology; it has exactly one child.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple

ROOT = "r"


class Point(NamedTuple):
    x: int
    y: int

    def dist(self, other: "Point") -> int:
        return abs(self.x - other.x) + abs(self.y - other.y)

    def norm(self) -> int:
        return abs(self.x) + abs(self.y)

    def dominates(self, other: "Point") -> bool:
        """True if ``other`` lies weakly below-left of this point."""
        return other.x <= self.x and other.y <= self.y


ORIGIN = Point(0, 0)


class MalformedSolution(ValueError):
    pass


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class Terminal:
    id: str
    position: Point
    depth: int


@dataclass(frozen=True)
class Instance:
    terminals: tuple[Terminal, ...]

    def __post_init__(self):
        object.__setattr__(self, "terminals", tuple(self.terminals))

    @classmethod
    def from_tuples(cls, rows: Iterable[tuple[int, int, int]]) -> "Instance":
        return cls(tuple(Terminal(f"t{i + 1}", Point(x, y), d)
                         for i, (x, y, d) in enumerate(rows)))

    def __len__(self):
        return len(self.terminals)

    def __iter__(self) -> Iterator[Terminal]:
        return iter(self.terminals)

    @property
    def depths(self) -> list[int]:
        return [t.depth for t in self.terminals]

    def by_id(self) -> dict[str, Terminal]:
        return {t.id: t for t in self.terminals}


@dataclass(frozen=True)
class Topology:
    """Rooted tree given by child lists. Nodes without children are leaves."""

    children: Mapping[str, tuple[str, ...]]
    root: str = ROOT

    def nodes(self) -> list[str]:
        seen = [self.root]
        for kids in self.children.values():
            seen.extend(kids)
        return list(dict.fromkeys(seen))

    def parents(self) -> dict[str, str]:
        par = {}
        for p, kids in self.children.items():
            for c in kids:
                par[c] = p
        return par

    def kids(self, node: str) -> tuple[str, ...]:
        return tuple(self.children.get(node, ()))

    def leaves(self) -> list[str]:
        return [v for v in self.preorder() if v != self.root and not self.kids(v)]

    def internal(self) -> list[str]:
        return [v for v in self.preorder() if v != self.root and self.kids(v)]

    def preorder(self) -> list[str]:
        out, stack, seen = [], [self.root], set()
        while stack:
            v = stack.pop()
            if v in seen:
                raise MalformedSolution(f"node {v!r} reached twice (cycle or shared child)")
            seen.add(v)
            out.append(v)
            stack.extend(reversed(self.kids(v)))
        return out

    def depth_map(self) -> dict[str, int]:
        """Number of Steiner nodes strictly between the root and each node."""
        depth = {self.root: 0}
        for v in self.preorder():
            step = 0 if v == self.root else 1
            for c in self.kids(v):
                depth[c] = depth[v] + step
        return depth

    def edges(self) -> list[tuple[str, str]]:
        return [(p, c) for p in self.preorder() for c in self.kids(p)]


@dataclass(frozen=True)
class EmbeddedSolution:
    topology: Topology
    placement: Mapping[str, Point]
    length: int

    @classmethod
    def build(cls, topology: Topology, placement: Mapping[str, Point]) -> "EmbeddedSolution":
        placement = dict(placement)
        placement.setdefault(topology.root, ORIGIN)
        return cls(topology, placement, embedded_length(topology, placement))

    def steiner_positions(self) -> list[Point]:
        return [self.placement[v] for v in self.topology.internal()]

    def edge_key(self) -> tuple:
        """Sorted placed-edge list; used to break ties between equal optima."""
        return tuple(sorted((self.placement[p], self.placement[c])
                            for p, c in self.topology.edges()))


def embedded_length(topology: Topology, placement: Mapping[str, Point]) -> int:
    try:
        return sum(placement[p].dist(placement[c]) for p, c in topology.edges())
    except KeyError as exc:
        raise MalformedSolution(f"malformed solution: node {exc.args[0]!r} has no position") from None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def ids(self) -> set[str]:
        return {cid for cid, _ in self.violations}

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "OK"
        return "\n".join(f"{cid}: {msg}" for cid, msg in self.violations)


def validate_instance(inst: Instance) -> ValidationReport:
    bad = []
    if not inst.terminals:
        bad.append(("nonempty", "instance has no terminals"))
    seen = set()
    for t in inst.terminals:
        if t.id in seen:
            bad.append(("unique-id", f"terminal {t.id} appears twice"))
        seen.add(t.id)
        if t.position.x < 0 or t.position.y < 0:
            bad.append(("first-quadrant", f"terminal {t.id} at {tuple(t.position)} is outside the first quadrant"))
        if t.depth < 0:
            bad.append(("depth", f"terminal {t.id} has negative depth {t.depth}"))
        if t.position == ORIGIN and t.depth == 0 and len(inst.terminals) > 1:
            bad.append(("root-clash", f"terminal {t.id} sits on the root with depth 0"))
    return ValidationReport(tuple(bad))


def hanan_grid(points: Iterable[Point]) -> list[Point]:
    points = list(points)
    if not points:
        raise ValueError("empty point set")
    xs = sorted({p[0] for p in points})
    ys = sorted({p[1] for p in points})
    return [Point(x, y) for x in xs for y in ys]


def verify_solution(inst: Instance, sol: EmbeddedSolution) -> ValidationReport:
    topo = sol.topology
    terms = inst.by_id()
    nodes = topo.nodes()
    for v in nodes:
        if v not in sol.placement:
            raise MalformedSolution(f"malformed solution: node {v!r} has no position")
    order = topo.preorder()
    in_tree = set(order)
    if len(order) != len(nodes):
        raise MalformedSolution("malformed solution: nodes unreachable from the root")
    for p in topo.children:
        if p not in in_tree:
            raise MalformedSolution(f"malformed solution: edge from unknown node {p!r}")

    bad = []
    root_kids = topo.kids(topo.root)
    if len(root_kids) != 1:
        bad.append(("degree", f"root has {len(root_kids)} children, expected 1"))
    if sol.placement[topo.root] != ORIGIN:
        bad.append(("pinned", "root is not at the origin"))
    for v in order:
        if v == topo.root:
            continue
        k = len(topo.kids(v))
        if v in terms:
            if k:
                bad.append(("leaf", f"terminal {v} has {k} children"))
        elif k == 0:
            bad.append(("leaf", f"non-terminal {v} is a leaf"))
        elif k != 2:
            bad.append(("degree", f"Steiner node {v} has {k} children, expected 2"))

    depth = topo.depth_map()
    # path length from the root, accumulated top-down
    dist = {topo.root: 0}
    for p, c in topo.edges():
        dist[c] = dist[p] + sol.placement[p].dist(sol.placement[c])
    for t in inst.terminals:
        if t.id not in in_tree:
            bad.append(("leaf", f"terminal {t.id} is not in the tree"))
            continue
        if sol.placement[t.id] != t.position:
            bad.append(("pinned", f"terminal {t.id} placed at {tuple(sol.placement[t.id])}, expected {tuple(t.position)}"))
        if dist[t.id] != t.position.norm():
            bad.append(("shortest-path", f"root path to {t.id} has length {dist[t.id]}, expected {t.position.norm()}"))
        if depth[t.id] != t.depth:
            bad.append(("depth", f"terminal {t.id} at depth {depth[t.id]}, expected {t.depth}"))

    total = embedded_length(topo, sol.placement)
    if total != sol.length:
        bad.append(("length", f"stored length {sol.length} but edges sum to {total}"))
    return ValidationReport(tuple(bad))


# ---------------------------------------------------------------- text formats

def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def parse_instance(text: str) -> Instance:
    rows = list(_lines(text))
    if not rows or rows[0][1] != ["DRSA", "1"]:
        raise FormatError("line 1: expected header 'DRSA 1'")
    terms = []
    for no, tok in rows[1:]:
        if tok[0] != "t" or len(tok) != 4:
            raise FormatError(f"line {no}: expected 't <x> <y> <depth>'")
        try:
            x, y, d = map(int, tok[1:])
        except ValueError:
            raise FormatError(f"line {no}: non-integer field") from None
        terms.append(Terminal(f"t{len(terms) + 1}", Point(x, y), d))
    return Instance(tuple(terms))


def format_instance(inst: Instance, comments: Mapping[str, str] | None = None) -> str:
    out = ["DRSA 1"]
    for t in inst.terminals:
        line = f"t {t.position.x} {t.position.y} {t.depth}"
        if comments and t.id in comments:
            line += f"  # {comments[t.id]}"
        out.append(line)
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> EmbeddedSolution:
    rows = list(_lines(text))
    if not rows or rows[0][1] != ["SOL", "1"]:
        raise FormatError("line 1: expected header 'SOL 1'")
    placement, children, length = {}, {}, None
    for no, tok in rows[1:]:
        try:
            if tok[0] == "n" and len(tok) == 4:
                placement[tok[1]] = Point(int(tok[2]), int(tok[3]))
            elif tok[0] == "e" and len(tok) == 3:
                children.setdefault(tok[1], []).append(tok[2])
            elif tok[0] == "len" and len(tok) == 2:
                length = int(tok[1])
            else:
                raise FormatError(f"line {no}: unknown record {tok[0]!r}")
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {no}: non-integer field") from None
    if length is None:
        raise FormatError("missing 'len' record")
    topo = Topology({p: tuple(c) for p, c in children.items()})
    return EmbeddedSolution(topo, placement, length)


def format_solution(sol: EmbeddedSolution) -> str:
    topo = sol.topology
    order = topo.preorder()
    out = ["SOL 1"]
    for v in order:
        p = sol.placement[v]
        out.append(f"n {v} {p.x} {p.y}")
    for p, c in topo.edges():
        out.append(f"e {p} {c}")
    out.append(f"len {sol.length}")
    return "\n".join(out) + "\n"
