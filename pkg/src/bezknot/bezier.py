"""Control polygons, exact evaluation and de Casteljau subdivision."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .kernel import Axis, Point3, RationalLike, as_rational

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ControlPolygon:
    """Ordered control points ``P_0 .. P_n`` of a degree-n Bezier curve.

    A closed curve repeats its first point at the end, as in the input data.
    """

    points: tuple[Point3, ...]

    def __post_init__(self) -> None:
        pts = tuple(p if isinstance(p, Point3) else Point3(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise ValueError("a control polygon needs at least two points")
        for i in range(len(pts) - 1):
            if pts[i] == pts[i + 1]:
                raise ValueError(f"consecutive control points {i} and {i + 1} coincide")

    @classmethod
    def raw(cls, points: Iterable[Point3]) -> "ControlPolygon":
        """Build without validation (subdivision output, hodographs)."""
        cp = object.__new__(cls)
        object.__setattr__(cp, "points", tuple(points))
        return cp

    @classmethod
    def of(cls, coords: Iterable[Sequence[RationalLike]]) -> "ControlPolygon":
        return cls(tuple(Point3(*c) for c in coords))

    @property
    def degree(self) -> int:
        return len(self.points) - 1

    @property
    def closed(self) -> bool:
        return len(self.points) > 2 and self.points[0] == self.points[-1]

    @property
    def first(self) -> Point3:
        return self.points[0]

    @property
    def last(self) -> Point3:
        return self.points[-1]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def scaled(self, factor: RationalLike) -> "ControlPolygon":
        k = as_rational(factor)
        return ControlPolygon.raw(p * k for p in self.points)

    def with_point(self, index: int, point: Point3) -> "ControlPolygon":
        pts = list(self.points)
        pts[index] = point
        return ControlPolygon(tuple(pts))


def _check_unit(t: Fraction, *, open_interval: bool) -> Fraction:
    t = as_rational(t)
    if open_interval and not 0 < t < 1:
        raise ValueError(f"split parameter must lie in (0, 1), got {t}")
    if not 0 <= t <= 1:
        raise ValueError(f"curve parameter must lie in [0, 1], got {t}")
    return t


def _triangle(points: Sequence[Point3], t: Fraction) -> tuple[list[Point3], list[Point3]]:
    # first and last columns of the de Casteljau triangle
    left = [points[0]]
    right = [points[-1]]
    row = list(points)
    s = 1 - t
    while len(row) > 1:
        if t == HALF:
            row = [Point3._make(((a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2))
                   for a, b in zip(row, row[1:])]
        else:
            row = [a * s + b * t for a, b in zip(row, row[1:])]
        left.append(row[0])
        right.append(row[-1])
    right.reverse()
    return left, right


def evaluate(cp: ControlPolygon, t: RationalLike) -> Point3:
    """Exact point C(t) by de Casteljau recursion."""
    t = _check_unit(as_rational(t), open_interval=False)
    if t == 0:
        return cp.first
    if t == 1:
        return cp.last
    return _triangle(cp.points, t)[0][-1]


def decasteljau_split(cp: ControlPolygon, t: RationalLike = HALF) -> tuple[ControlPolygon, ControlPolygon]:
    t = _check_unit(as_rational(t), open_interval=True)
    left, right = _triangle(cp.points, t)
    return ControlPolygon.raw(left), ControlPolygon.raw(right)


@dataclass(frozen=True)
class SubdivisionForest:
    """The 2**level sub-control polygons from repeated halving, in curve order.

    ``scale`` records any factor applied to the input before subdividing.
    """

    level: int
    pieces: tuple[ControlPolygon, ...]
    scale: Fraction = field(default=Fraction(1))

    def refinement(self) -> list[Point3]:
        """Vertices of the union of all sub-control polygons (shared ends once).

        For a closed input the result does not repeat the starting point.
        """
        pts = [self.pieces[0].first]
        for piece in self.pieces:
            pts.extend(piece.points[1:])
        if pts[0] == pts[-1]:
            pts.pop()
        return pts

    def breakpoints(self) -> list[Point3]:
        """Curve points C(k / 2**level) where neighbouring pieces meet."""
        pts = [piece.first for piece in self.pieces]
        if self.pieces[-1].last != pts[0]:
            pts.append(self.pieces[-1].last)
        return pts


def subdivide_levels(cp: ControlPolygon, level: int, *, scale: RationalLike = 1) -> SubdivisionForest:
    if level < 0:
        raise ValueError("level must be non-negative")
    pieces = [cp]
    for _ in range(level):
        nxt = []
        for piece in pieces:
            nxt.extend(decasteljau_split(piece, HALF))
        pieces = nxt
    return SubdivisionForest(level, tuple(pieces), as_rational(scale))


def scaling_exponent(degree: int, level: int) -> int:
    """Power of two that keeps ``level`` rounds of halving on the integer lattice."""
    return level * (degree + 1) + 1


def scale_for_subdivision(cp: ControlPolygon, level: int) -> tuple[ControlPolygon, int]:
    if level < 0:
        raise ValueError("level must be non-negative")
    for p in cp.points:
        if any(c.denominator != 1 for c in p):
            raise ValueError(f"integer coordinates required, got {p}")
    m = scaling_exponent(cp.degree, level)
    return cp.scaled(2 ** m), m


def hodograph(cp: ControlPolygon) -> ControlPolygon:
    """Control points n*(P[i+1] - P[i]) of the derivative curve."""
    n = cp.degree
    if n < 1:
        raise ValueError("hodograph needs degree >= 1")
    pts = cp.points
    return ControlPolygon.raw((pts[i + 1] - pts[i]) * n for i in range(n))


def monotone_axes(cp: ControlPolygon) -> frozenset[Axis]:
    """Coordinates in which the control points are strictly monotone."""
    out = set()
    pts = cp.points
    for axis in Axis:
        diffs = [b[axis] - a[axis] for a, b in zip(pts, pts[1:])]
        if diffs and (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
            out.add(axis)
    return frozenset(out)
