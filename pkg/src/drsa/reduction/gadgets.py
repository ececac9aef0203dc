"""Tile gadgets.

All tiles share the prototype breakpoints 0, a, 2a, 2a+1, 2a+2, 3a+2, 4a+2
(``a`` = alpha). Port ``i`` has its terminal at ``o_i`` and an alternative
position ``o_hat_i`` one unit away:

    o1 = (0, 2a+1)     o_hat1 = (0, 2a)        left,   output
    o2 = (2a+1, 0)     o_hat2 = (2a, 0)        bottom, output
    o3 = (4a+2, 2a+1)  o_hat3 = (4a+2, 2a)     right,  input
    o4 = (2a+1, 4a+2)  o_hat4 = (2a, 4a+2)     top,    input

Depths are stored as offsets from the tile's reference depth ``k``: the
depth of the input Steiner point for tiles with inputs, the depth of the four
central terminals for variable tiles. A port's depth is the depth of its
boundary Steiner point, i.e. one less than the depth of the terminal at
``o_i``. Output terminals at ``o1``/``o2`` belong to the tile that owns the
output; the terminal at an input's ``o3``/``o4`` belongs to the neighbour.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..model import Point
from ..tiles import Port, TileProblem

KINDS = ("variable", "clause", "connection-h", "connection-v", "crossing",
         "splitter-h", "splitter-v", "corner-h", "corner-v", "junction-h",
         "junction-v", "root")


def breakpoints(alpha: int) -> tuple[int, ...]:
    a = alpha
    return (0, a, 2 * a, 2 * a + 1, 2 * a + 2, 3 * a + 2, 4 * a + 2)


def port_positions(alpha: int) -> dict[int, tuple[Point, Point, str]]:
    a = alpha
    mid, low, side = 2 * a + 1, 2 * a, 4 * a + 2
    return {
        1: (Point(0, mid), Point(0, low), "left"),
        2: (Point(mid, 0), Point(low, 0), "bottom"),
        3: (Point(side, mid), Point(side, low), "right"),
        4: (Point(mid, side), Point(low, side), "top"),
        0: (Point(low, low), Point(low, low), "root"),
    }


def double_positions(alpha: int) -> dict[int, Point]:
    a = alpha
    return {1: Point(a, 2 * a + 1), 2: Point(2 * a + 1, a),
            3: Point(3 * a + 2, 2 * a + 1), 4: Point(2 * a + 1, 3 * a + 2)}


@dataclass(frozen=True)
class TermSpec:
    label: str
    offset: Point
    depth: int  # relative to the reference depth k
    group: str = "single"  # single | double | cascade | port


@dataclass(frozen=True)
class PortSpec:
    index: int  # 1..4
    role: str
    depth: int  # boundary Steiner depth, relative to k
    name: str = ""


@dataclass(frozen=True)
class GadgetTemplate:
    kind: str
    alpha: int
    terminals: tuple[TermSpec, ...]
    ports: tuple[PortSpec, ...]
    cascade: int = 0  # size of the splitter cascade (gamma), if any

    @property
    def side(self) -> int:
        return 4 * self.alpha + 2

    @property
    def inputs(self) -> list[PortSpec]:
        return [p for p in self.ports if p.role == "input"]

    @property
    def outputs(self) -> list[PortSpec]:
        return [p for p in self.ports if p.role == "output"]

    def double_count(self) -> int:
        return len({t.offset for t in self.terminals if t.group == "double"})

    def port(self, name: str) -> PortSpec:
        for p in self.ports:
            if p.name == name:
                return p
        raise KeyError(name)

    def problem(self, k: int, input_parities=()) -> TileProblem:
        pos = port_positions(self.alpha)
        ports = []
        ins = iter(input_parities)
        for spec in self.ports:
            o, oh, side = pos[spec.index]
            par = next(ins) if spec.role == "input" else None
            ports.append(Port(spec.role, side, o, oh, k + spec.depth, par))
        terms = tuple((t.offset, k + t.depth) for t in self.terminals)
        return TileProblem(self.side, self.side, terms, tuple(ports),
                           tuple(t.label for t in self.terminals))


def _double(label, p, top):
    return [TermSpec(f"{label}a", p, top, "double"), TermSpec(f"{label}b", p, top - 1, "double")]


def _cascade(label, p, hi, count):
    return [TermSpec(f"{label}{j}", p, hi - j, "cascade") for j in range(count)]


def _mirror(t: GadgetTemplate, kind: str) -> GadgetTemplate:
    swap = {0: 0, 1: 2, 2: 1, 3: 4, 4: 3}
    terms = tuple(TermSpec(s.label, Point(s.offset.y, s.offset.x), s.depth, s.group)
                  for s in t.terminals)
    ports = tuple(PortSpec(swap[p.index], p.role, p.depth, p.name) for p in t.ports)
    return GadgetTemplate(kind, t.alpha, terms, ports, t.cascade)


def variable_template(alpha: int) -> GadgetTemplate:
    a = alpha
    C, D = 2 * a, 2 * a + 1
    dp = double_positions(a)
    o = port_positions(a)
    terms = [TermSpec("c_dd", Point(D, D), 0), TermSpec("c_cd", Point(C, D), 0),
             TermSpec("c_dc", Point(D, C), 0), TermSpec("c_cc", Point(C, C), 0)]
    terms += _double("D1", dp[1], -1) + _double("D2", dp[2], -1)
    terms += [TermSpec("o1", o[1][0], -3, "port"), TermSpec("o2", o[2][0], -3, "port")]
    ports = (PortSpec(1, "output", -4, "pos"), PortSpec(2, "output", -4, "neg"))
    return GadgetTemplate("variable", a, tuple(terms), ports)


def connection_template(alpha: int, vertical: bool = False) -> GadgetTemplate:
    a = alpha
    D = 2 * a + 1
    dp = double_positions(a)
    o = port_positions(a)
    terms = _double("D3", dp[3], 0) + [TermSpec("mid", Point(D, D), -2)] + _double("D1", dp[1], -3)
    terms += [TermSpec("o1", o[1][0], -5, "port")]
    ports = (PortSpec(3, "input", 0, "in"), PortSpec(1, "output", -6, "out"))
    t = GadgetTemplate("connection-h", a, tuple(terms), ports)
    return _mirror(t, "connection-v") if vertical else t


def crossing_template(alpha: int, shift: int) -> GadgetTemplate:
    """Horizontal pass at depth k, vertical pass at depth k + shift."""
    h = connection_template(alpha)
    v = connection_template(alpha, vertical=True)
    terms = tuple(TermSpec("h_" + s.label, s.offset, s.depth, s.group) for s in h.terminals)
    terms += tuple(TermSpec("v_" + s.label, s.offset, s.depth + shift, s.group) for s in v.terminals)
    ports = (PortSpec(3, "input", 0, "in_h"), PortSpec(4, "input", shift, "in_v"),
             PortSpec(1, "output", -6, "out_h"), PortSpec(2, "output", shift - 6, "out_v"))
    return GadgetTemplate("crossing", alpha, terms, ports)


def clause_template(alpha: int, beta: int) -> GadgetTemplate:
    a = alpha
    C, D = 2 * a, 2 * a + 1
    dp = double_positions(a)
    o = port_positions(a)
    terms = _cascade("S1_", Point(D, D), -2, beta) + _cascade("S2_", Point(C, C), -2, beta)
    terms += _double("D2", dp[2], -beta - 3) + _double("D4", dp[4], 0) + _double("D3", dp[3], 0)
    terms += [TermSpec("o2", o[2][0], -beta - 5, "port")]
    ports = (PortSpec(3, "input", 0, "in_row"), PortSpec(4, "input", 0, "in_col"),
             PortSpec(2, "output", -beta - 6, "out"))
    return GadgetTemplate("clause", a, tuple(terms), ports)


def splitter_template(alpha: int, gamma: int, vertical: bool = False) -> GadgetTemplate:
    """Input on the right; ``straight`` leaves left, ``turn`` leaves at the bottom.

    The vertical splitter is the mirror image: input on top, ``straight`` leaves
    at the bottom and ``turn`` leaves to the left.
    """
    a = alpha
    C, D, DD = 2 * a, 2 * a + 1, 2 * a + 2
    dp = double_positions(a)
    o = port_positions(a)
    kb = -gamma - 1
    terms = _double("D3", dp[3], 0) + _cascade("G", Point(D, DD), -2, gamma)
    terms += [TermSpec("e", Point(C, DD), -3)]
    terms += _double("D1", dp[1], -3) + [TermSpec("o1", o[1][0], -5, "port")]
    terms += _double("D2", dp[2], kb - 1) + [TermSpec("o2", o[2][0], kb - 3, "port")]
    ports = (PortSpec(3, "input", 0, "in"), PortSpec(1, "output", -6, "straight"),
             PortSpec(2, "output", kb - 4, "turn"))
    t = GadgetTemplate("splitter-h", a, tuple(terms), ports, gamma)
    return _mirror(t, "splitter-v") if vertical else t


def corner_template(alpha: int, vertical: bool = False) -> GadgetTemplate:
    """Single input on top, single output on the left (mirrored: right -> bottom)."""
    a = alpha
    D = 2 * a + 1
    dp = double_positions(a)
    o = port_positions(a)
    terms = _double("D4", dp[4], 0) + [TermSpec("mid", Point(D, D), -2)] + _double("D1", dp[1], -3)
    terms += [TermSpec("o1", o[1][0], -5, "port")]
    ports = (PortSpec(4, "input", 0, "in"), PortSpec(1, "output", -6, "out"))
    t = GadgetTemplate("corner-h", a, tuple(terms), ports)
    return _mirror(t, "corner-v") if vertical else t


def _merge_terms(delta: int):
    """Right input at depth 0 meets the top input at depth ``delta``.

    Returns the merge node's depth and the cascade bridging the two depths.
    The cascade sits on (2a, 2a), which both parities of either input can
    pass through, so its members cost nothing whatever the parities.
    """
    lo, hi = min(0, delta), max(0, delta)
    return lo - 3, list(range(hi - 2, lo - 2, -1))


def junction_template(alpha: int, delta: int, vertical: bool = False) -> GadgetTemplate:
    """Inputs on the right (depth k) and on top (depth k + delta), output left.

    The mirrored tile takes the right input as ``delta``-shifted and leaves at
    the bottom.
    """
    a = alpha
    C = 2 * a
    dp = double_positions(a)
    o = port_positions(a)
    merge, cascade = _merge_terms(delta)
    terms = _double("D3", dp[3], 0) + _double("D4", dp[4], delta)
    terms += [TermSpec(f"M{j}", Point(C, C), d, "cascade") for j, d in enumerate(cascade)]
    terms += _double("D1", dp[1], merge) + [TermSpec("o1", o[1][0], merge - 2, "port")]
    ports = (PortSpec(3, "input", 0, "in_h"), PortSpec(4, "input", delta, "in_v"),
             PortSpec(1, "output", merge - 3, "out"))
    t = GadgetTemplate("junction-h", a, tuple(terms), ports, len(cascade))
    return _mirror(t, "junction-v") if vertical else t


def root_template(alpha: int, k_right: int, k_top: int) -> GadgetTemplate:
    """The cell holding the root, which sits at local (2a, 2a).

    The right input arrives at absolute depth ``k_right``, the top input at
    ``k_top``; depths are stored relative to ``k_right``. A cascade on the root
    lifts the merge node to the right depth.
    """
    a = alpha
    C = 2 * a
    dp = double_positions(a)
    delta = k_top - k_right
    merge, cascade = _merge_terms(delta)
    if k_right + merge < 0:
        raise ValueError("inputs too shallow to reach the root")
    terms = _double("D3", dp[3], 0) + _double("D4", dp[4], delta)
    terms += [TermSpec(f"M{j}", Point(C, C), d, "cascade") for j, d in enumerate(cascade)]
    terms += [TermSpec(f"R{j}", Point(C, C), merge - j, "cascade")
              for j in range(k_right + merge)]
    ports = (PortSpec(3, "input", 0, "in_h"), PortSpec(4, "input", delta, "in_v"),
             PortSpec(0, "output", -k_right, "root"))
    return GadgetTemplate("root", a, tuple(terms), ports, len(cascade))
