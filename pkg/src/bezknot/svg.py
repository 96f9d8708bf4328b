"""Deterministic SVG drawings of knot diagrams.

Coordinates stay exact until emission, where they are printed with 30
significant digits.  Under-strands are cut around each crossing and every
crossing is marked with a small circle.
"""

from __future__ import annotations

from decimal import Context, Decimal
from fractions import Fraction
from pathlib import Path
from typing import TextIO

from .kernel import Point2
from .topology import KnotDiagram, PLKnot

_CTX = Context(prec=30)
GAP = Fraction(1, 40)  # half-width of an under-strand break, as a fraction of the drawing size
CANVAS = 800


def _dec(x: Fraction) -> str:
    d = _CTX.divide(Decimal(x.numerator), Decimal(x.denominator))
    text = format(d.normalize(_CTX), "f")
    return "0" if text in ("-0", "") else text


def _path(points: list[Point2]) -> str:
    return " ".join(f"{_dec(p[0])},{_dec(p[1])}" for p in points)


def render_svg(d: KnotDiagram, knot: PLKnot, out: str | Path | TextIO) -> int:
    """Write the diagram of ``knot`` as SVG; returns the number of under-strand breaks."""
    proj = [p.drop(d.projection_axis) for p in knot.vertices]
    us = [p[0] for p in proj]
    vs = [p[1] for p in proj]
    umin, vmin = min(us), min(vs)
    span = max(max(us) - umin, max(vs) - vmin) or Fraction(1)
    scale = Fraction(CANVAS) / span

    def to_canvas(p) -> Point2:
        # flip v so the drawing matches the usual upward axis
        return Point2((p[0] - umin) * scale, (span - (p[1] - vmin)) * scale)

    pts = [to_canvas(p) for p in proj]
    n = len(pts)
    # cut positions along each edge: (edge, parameter) of every under visit
    cuts: dict[int, list[Fraction]] = {}
    for c in d.crossings:
        cuts.setdefault(c.under_edge, []).append(c.under_param)
    strands: list[list[Point2]] = [[pts[0]]]
    for e in range(n):
        a, b = pts[e], pts[(e + 1) % n]
        length2 = (b - a).dot(b - a)
        for t in sorted(cuts.get(e, [])):
            # gap measured in canvas units, converted to a parameter offset on this edge
            gap = GAP * CANVAS
            dt = _param_offset(gap, length2)
            strands[-1].append(a + (b - a) * max(Fraction(0), t - dt))
            strands.append([a + (b - a) * min(Fraction(1), t + dt)])
        strands[-1].append(b)
    closed = not cuts
    if not closed and len(strands) > 1:
        # the curve starts mid-strand: join the last strand onto the first
        strands[0] = strands.pop() + strands[0][1:]
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="-20 -20 {CANVAS + 40} {CANVAS + 40}" '
        f'width="{CANVAS + 40}" height="{CANVAS + 40}">',
        f'<!-- projection dropping {d.projection_axis}, {len(d.crossings)} crossings -->',
        '<g fill="none" stroke="black" stroke-width="3" stroke-linejoin="round">',
    ]
    if closed:
        lines.append(f'<polygon points="{_path(pts)}"/>')
    else:
        for s in strands:
            lines.append(f'<polyline points="{_path(s)}"/>')
    lines.append("</g>")
    lines.append('<g fill="none" stroke="red" stroke-width="1" stroke-dasharray="2,2">')
    for c in d.crossings:
        q = to_canvas(c.location)
        lines.append(f'<circle cx="{_dec(q[0])}" cy="{_dec(q[1])}" r="{_dec(GAP * CANVAS * 3 / 2)}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    if hasattr(out, "write"):
        out.write(text)  # type: ignore[union-attr]
    else:
        Path(out).write_text(text, encoding="utf-8")
    return len(d.crossings)


def _param_offset(gap: Fraction, length2: Fraction) -> Fraction:
    """Parameter step covering about ``gap`` canvas units on an edge of squared length ``length2``.

    The square root is only needed for drawing, so a rational approximation is fine.
    """
    if not length2:
        return Fraction(1, 3)
    root = _CTX.divide(Decimal(length2.numerator), Decimal(length2.denominator)).sqrt(_CTX)
    approx = Fraction(root).limit_denominator(10 ** 6)
    return min(Fraction(1, 3), gap / approx)
