"""Static SVG pictures of planar polytopes and families of them."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .decorated import DecoratedPolytope
from .deformation import DeformationFamily

FRAME = 240
MARGIN = 30


class NotPlanar(ValueError):
    pass


def _polygon(D: DecoratedPolytope) -> list[tuple[float, float, tuple]]:
    pts = [(float(v.point[0]), float(v.point[1]), v.active_set) for v in D.polytope.vertices()]
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    return sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


def _frame(D: DecoratedPolytope, x0: float, bounds, caption: str) -> list[str]:
    (xmin, xmax), (ymin, ymax) = bounds
    scale = (FRAME - 2 * MARGIN) / max(xmax - xmin, ymax - ymin, 1e-9)

    def to_canvas(x, y):
        return x0 + MARGIN + (x - xmin) * scale, FRAME - MARGIN - (y - ymin) * scale

    poly = _polygon(D)
    pts = " ".join(f"{a:.3f},{b:.3f}" for a, b in (to_canvas(x, y) for x, y, _ in poly))
    out = [f'<polygon points="{pts}" fill="#dde8f4" stroke="#1f3b5c" stroke-width="1.5"/>']
    for (x1, y1, s1), (x2, y2, s2) in zip(poly, poly[1:] + poly[:1]):
        shared = set(s1) & set(s2)
        if len(shared) != 1:
            continue
        f = shared.pop()
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        nx, ny = (float(c) for c in D.normals[f])
        norm = math.hypot(nx, ny) or 1.0
        arrow = 0.15 * max(xmax - xmin, ymax - ymin)
        ax, ay = to_canvas(mx, my)
        bx, by = to_canvas(mx + arrow * nx / norm, my + arrow * ny / norm)
        out.append(
            f'<line x1="{ax:.3f}" y1="{ay:.3f}" x2="{bx:.3f}" y2="{by:.3f}" '
            f'stroke="#b03a2e" stroke-width="1" marker-end="url(#arrow)"/>'
        )
        out.append(
            f'<text x="{bx + 3:.3f}" y="{by - 3:.3f}" font-size="10" fill="#b03a2e">f{f + 1}</text>'
        )
    out.append(
        f'<text x="{x0 + FRAME / 2:.3f}" y="{FRAME - 6}" font-size="11" '
        f'text-anchor="middle">{escape(caption)}</text>'
    )
    return out


def _bounds(data: Sequence[DecoratedPolytope]):
    xs = [float(v.point[0]) for D in data for v in D.polytope.vertices()]
    ys = [float(v.point[1]) for D in data for v in D.polytope.vertices()]
    pad = 0.2 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    return (min(xs) - pad, max(xs) + pad), (min(ys) - pad, max(ys) + pad)


def render(datum, frames: int = 5) -> str:
    """SVG 1.1 document for a planar polytope or a strip of family frames."""
    if isinstance(datum, DeformationFamily):
        taus = [Fraction(k, frames - 1) for k in range(frames)] if frames > 1 else [Fraction(0)]
        data = [datum.evaluate(t) for t in taus]
        captions = [f"tau = {t}" for t in taus]
    else:
        data = [datum]
        captions = [""]
    if data[0].n != 2:
        raise NotPlanar(f"plots are only drawn for n = 2 (got n = {data[0].n})")
    bounds = _bounds(data)
    width = FRAME * len(data)
    body = []
    for k, (D, cap) in enumerate(zip(data, captions)):
        body += _frame(D, k * FRAME, bounds, cap)
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{FRAME}" '
        f'viewBox="0 0 {width} {FRAME}">\n'
        '<defs><marker id="arrow" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto">'
        '<path d="M0,0 L6,3 L0,6 z" fill="#b03a2e"/></marker></defs>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"
