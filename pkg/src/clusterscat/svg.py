"""Plain SVG pictures of rank-2 diagrams, optionally with broken lines on top.

Weights are drawn in rho coordinates on the Euclidean plane.  The output is
presentation only; nothing in the checks reads it back.
"""
from __future__ import annotations

import math
from typing import List, Optional, Sequence
from xml.sax.saxutils import escape

from .scat import ScatteringDiagram, wall_rays

SIZE = 480
RADIUS = 200.0
PALETTE = ["#c0392b", "#2471a3", "#239b56", "#8e44ad", "#d68910", "#17a589"]


def _unit(v: Sequence) -> tuple:
    x, y = float(v[0]), float(v[1])
    r = math.hypot(x, y)
    return (x / r, y / r)


def _xy(p: Sequence, scale: float) -> tuple:
    c = SIZE / 2
    return (round(c + scale * float(p[0]), 2), round(c - scale * float(p[1]), 2))


def diagram_svg(d: ScatteringDiagram, lines: Optional[List] = None, title: str = "") -> str:
    if d.n != 2:
        raise ValueError("SVG output is drawn for rank 2 only")
    c = SIZE / 2
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}" font-family="monospace" font-size="9">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="8" y="14" font-size="11">{escape(title)}</text>')
    labelled = set()
    for w in sorted(d.nontrivial(), key=lambda w: (w.degree, w.normal)):
        for u in wall_rays(d.data, w):
            ux, uy = _unit(u)
            x, y = c + RADIUS * ux, c - RADIUS * uy
            out.append(f'<line x1="{c}" y1="{c}" x2="{x:.2f}" y2="{y:.2f}" stroke="black" stroke-width="1"/>')
            key = tuple(u)
            if key in labelled:
                continue
            labelled.add(key)
            lx, ly = c + (RADIUS + 12) * ux, c - (RADIUS + 12) * uy
            anchor = "start" if ux > 0.2 else "end" if ux < -0.2 else "middle"
            out.append(f'<text x="{lx:.2f}" y="{ly:.2f}" text-anchor="{anchor}">'
                       f'{escape(w.function_text())}</text>')
    if lines:
        out.extend(_broken_lines_svg(lines))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _broken_lines_svg(lines: List) -> List[str]:
    # scale so that the endpoint and every bend fit well inside the frame
    pts = [bl.endpoint for bl in lines] + [s.start for bl in lines for s in bl.segments if s.start is not None]
    reach = max(max(abs(float(p[0])), abs(float(p[1]))) for p in pts)
    scale = 0.6 * RADIUS / reach
    out = []
    for idx, bl in enumerate(lines):
        colour = PALETTE[idx % len(PALETTE)]
        ends = [s.start for s in bl.segments[1:]] + [bl.endpoint]
        for seg, end in zip(bl.segments, ends):
            if seg.start is None:
                # the unbounded first segment comes in from direction lam_L
                ux, uy = _unit(seg.lam)
                ex, ey = float(end[0]), float(end[1])
                far = 1.4 * RADIUS / scale
                start = (ex + far * ux, ey + far * uy)
            else:
                start = seg.start
            x1, y1 = _xy(start, scale)
            x2, y2 = _xy(end, scale)
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{colour}" '
                       f'stroke-width="1.5" stroke-opacity="0.8"/>')
    if lines:
        px, py = _xy(lines[0].endpoint, scale)
        out.append(f'<circle cx="{px}" cy="{py}" r="3" fill="black"/>')
    return out
