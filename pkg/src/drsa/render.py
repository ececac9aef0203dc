"""SVG drawings of instances, solutions and tile grids.

Terminals are filled squares, double terminals (two on one point) double
squares, cascades (three or more) rhombs, Steiner points dots and the root a
ring. Edges are drawn as L-shaped polylines, horizontal leg first. Output is
deterministic: identical inputs give identical bytes.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from math import cos, pi, sin

from .model import ORIGIN, EmbeddedSolution, Instance, Point, verify_solution

LAYERS = ("terminals", "steiner", "edges", "tile-borders", "depth-labels")


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class RenderOptions:
    scale: float | None = None  # pixels per unit; None fits the drawing into ``size``
    size: int = 800
    margin: int = 20
    layers: tuple[str, ...] = ("terminals", "steiner", "edges", "tile-borders")

    def __post_init__(self):
        if self.scale is not None and self.scale <= 0:
            raise ValueError("scale must be positive")
        for layer in self.layers:
            if layer not in LAYERS:
                raise ValueError(f"unknown layer {layer!r}")


def _f(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(inst: Instance, sol: EmbeddedSolution | None = None, grid=None,
               opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    if sol is not None:
        report = verify_solution(inst, sol)
        if not report.ok:
            raise RenderError(f"refusing to render an invalid solution\n{report}")
    pts = [t.position for t in inst.terminals] + [ORIGIN]
    if sol is not None:
        pts += list(sol.placement.values())
    x0, y0 = min(p.x for p in pts), min(p.y for p in pts)
    x1, y1 = max(p.x for p in pts), max(p.y for p in pts)
    if grid is not None:
        S = grid.params.side
        lo = grid.origin(grid.cells[(0, 0)])
        x0, y0 = min(x0, lo.x), min(y0, lo.y)
        x1, y1 = max(x1, lo.x + grid.side * S), max(y1, lo.y + grid.side * S)
    span = max(x1 - x0, y1 - y0, 1)
    scale = opts.scale if opts.scale is not None else (opts.size - 2 * opts.margin) / span
    m = opts.margin
    width = (x1 - x0) * scale + 2 * m
    height = (y1 - y0) * scale + 2 * m

    def X(x):
        return _f((x - x0) * scale + m)

    def Y(y):
        return _f((y1 - y) * scale + m)

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(width)}" '
           f'height="{_f(height)}" viewBox="0 0 {_f(width)} {_f(height)}">',
           '<rect width="100%" height="100%" fill="white"/>']

    if grid is not None and "tile-borders" in opts.layers:
        S = grid.params.side
        lo = grid.origin(grid.cells[(0, 0)])
        out.append('<g class="tile-borders" stroke="#bbbbbb" stroke-width="0.5" fill="none">')
        for r in range(grid.side):
            for c in range(grid.side):
                x, y = lo.x + c * S, lo.y + r * S
                kind = grid.cells[(c, r)].kind if (c, r) in grid.cells else "empty"
                out.append(f'<rect class="tile {kind}" x="{X(x)}" y="{Y(y + S)}" '
                           f'width="{_f(S * scale)}" height="{_f(S * scale)}"/>')
        out.append('</g>')

    if sol is not None and "edges" in opts.layers:
        out.append('<g class="edges" stroke="black" stroke-width="1" fill="none">')
        for p, c in sorted(sol.topology.edges()):
            a, b = sol.placement[p], sol.placement[c]
            if a == b:
                continue
            out.append(f'<polyline points="{X(a.x)},{Y(a.y)} {X(b.x)},{Y(a.y)} {X(b.x)},{Y(b.y)}"/>')
        out.append('</g>')

    r = 3.0
    out.append('<g class="markers">')
    out.append(f'<circle class="marker root" cx="{X(0)}" cy="{Y(0)}" r="{_f(r + 1)}" '
               f'fill="none" stroke="black"/>')
    if sol is not None and "steiner" in opts.layers:
        at = defaultdict(list)
        for v in sol.topology.internal():
            at[sol.placement[v]].append(v)
        for p in sorted(at):
            group = sorted(at[p])
            for i, _ in enumerate(group):
                # coincident Steiner points sit on a small ring around their position
                dx = dy = 0.0
                if len(group) > 1:
                    ang = 2 * pi * i / len(group)
                    dx, dy = 2 * r * cos(ang), 2 * r * sin(ang)
                cx = (p.x - x0) * scale + m + dx
                cy = (y1 - p.y) * scale + m - dy
                out.append(f'<circle class="marker steiner" cx="{_f(cx)}" cy="{_f(cy)}" '
                           f'r="{_f(r / 1.5)}" fill="black"/>')
    if "terminals" in opts.layers:
        count = Counter(t.position for t in inst.terminals)
        depths = defaultdict(list)
        for t in inst.terminals:
            depths[t.position].append(t.depth)
        for p in sorted(count):
            cx, cy = X(p.x), Y(p.y)
            k = count[p]
            if k == 1:
                out.append(f'<rect class="marker terminal" x="{_f(float(cx) - r)}" '
                           f'y="{_f(float(cy) - r)}" width="{_f(2 * r)}" height="{_f(2 * r)}" fill="black"/>')
            elif k == 2:
                out.append(f'<g class="marker double">'
                           f'<rect x="{_f(float(cx) - r - 2)}" y="{_f(float(cy) - r - 2)}" '
                           f'width="{_f(2 * r + 4)}" height="{_f(2 * r + 4)}" fill="none" stroke="black"/>'
                           f'<rect x="{_f(float(cx) - r)}" y="{_f(float(cy) - r)}" '
                           f'width="{_f(2 * r)}" height="{_f(2 * r)}" fill="black"/></g>')
            else:
                fx, fy = float(cx), float(cy)
                s = r + 1
                out.append(f'<polygon class="marker cascade" points="{_f(fx)},{_f(fy - s)} '
                           f'{_f(fx + s)},{_f(fy)} {_f(fx)},{_f(fy + s)} {_f(fx - s)},{_f(fy)}" fill="black"/>')
            if "depth-labels" in opts.layers:
                ds = sorted(depths[p])
                label = str(ds[0]) if len(ds) == 1 else f"{ds[0]}..{ds[-1]}"
                out.append(f'<text x="{_f(float(cx) + r + 2)}" y="{_f(float(cy) - r - 2)}" '
                           f'font-size="9" font-family="sans-serif">{label}</text>')
    out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"
