"""Deterministic SVG rendering of drawings.

The only place exact coordinates are converted to floats; the output is
display-only and never read back.  Numbers are printed with 9 significant
digits so identical inputs yield byte-identical files.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from .drawing import Point, TopoDrawing, edge_key

_PALETTE = ["#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085"]


def _fmt(x: float) -> str:
    return format(x, ".9g")


def _path(points: Sequence[Point], close: bool = False) -> str:
    cmds = []
    for i, (x, y) in enumerate(points):
        cmds.append(("M" if i == 0 else "L") + f"{_fmt(float(x))},{_fmt(float(-y))}")
    if close:
        cmds.append("Z")
    return " ".join(cmds)


def _cycle_loop(d: TopoDrawing, cycle: Sequence[int]) -> List[Point]:
    pts: List[Point] = []
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        poly = list(d.edges[edge_key(a, b)])
        if poly[0] != d.vertex_points[a]:
            poly.reverse()
        pts.extend(poly[:-1])
    return pts


def render_svg(
    d: TopoDrawing,
    highlight_cycles: Optional[Iterable[Sequence[int]]] = None,
    fill_cycles: Optional[Iterable[Sequence[int]]] = None,
    probe_points: Optional[Iterable[Point]] = None,
    width: int = 800,
) -> str:
    xs = [float(x) for poly in d.edges.values() for x, _ in poly]
    ys = [float(y) for poly in d.edges.values() for _, y in poly]
    if not xs:
        xs = [float(x) for x, _ in d.vertex_points]
        ys = [float(y) for _, y in d.vertex_points]
    pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    height = int(round(width * (y1 - y0) / (x1 - x0))) or width
    stroke = (x1 - x0) / 400
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width}" height="{height}" '
        f'viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(x1 - x0)} {_fmt(y1 - y0)}">'
    ]
    for cidx, cycle in enumerate(fill_cycles or []):
        loop = _cycle_loop(d, list(cycle))
        color = _PALETTE[cidx % len(_PALETTE)]
        out.append(
            f'<path d="{_path(loop, close=True)}" fill="{color}" '
            'fill-opacity="0.35" fill-rule="evenodd" stroke="none"/>'
        )
    for key in d.edge_keys:
        out.append(
            f'<path d="{_path(d.edges[key])}" fill="none" '
            f'stroke="#555555" stroke-width="{_fmt(stroke)}"/>'
        )
    for cidx, cycle in enumerate(highlight_cycles or []):
        loop = _cycle_loop(d, list(cycle))
        color = _PALETTE[cidx % len(_PALETTE)]
        out.append(
            f'<path d="{_path(loop, close=True)}" fill="none" '
            f'stroke="{color}" stroke-width="{_fmt(2 * stroke)}"/>'
        )
    for v, (x, y) in enumerate(d.vertex_points):
        out.append(
            f'<circle cx="{_fmt(float(x))}" cy="{_fmt(float(-y))}" '
            f'r="{_fmt(2.5 * stroke)}" fill="#111111"/>'
        )
        out.append(
            f'<text x="{_fmt(float(x) + 3 * stroke)}" y="{_fmt(float(-y) - 3 * stroke)}" '
            f'font-size="{_fmt(8 * stroke)}" fill="#111111">{v}</text>'
        )
    for px, py in probe_points or []:
        fx, fy = float(px), float(-Fraction(py))
        r = 3 * stroke
        out.append(
            f'<path d="M{_fmt(fx - r)},{_fmt(fy)} L{_fmt(fx + r)},{_fmt(fy)} '
            f'M{_fmt(fx)},{_fmt(fy - r)} L{_fmt(fx)},{_fmt(fy + r)}" '
            f'stroke="#e74c3c" stroke-width="{_fmt(stroke)}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
