"""One-vertex linear deformations of a control polygon and a bisection for knot-type changes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .bezier import ControlPolygon
from .certify import DEFAULT_MAX_LEVEL, CertificationError, IsotopyCertificate, bezier_knot_type
from .kernel import Point3, RationalLike, as_rational
from .topology import KnotClass


@dataclass(frozen=True)
class VertexHomotopy:
    """``base`` with control point ``vertex`` moving straight from ``start`` to ``end``.

    For a closed polygon whose first point is moved, the duplicate last point
    moves with it.
    """

    base: ControlPolygon
    vertex: int
    start: Point3
    end: Point3

    def __post_init__(self) -> None:
        if not 0 <= self.vertex < len(self.base):
            raise ValueError(f"vertex index {self.vertex} out of range")
        polygon_at(self, 0)
        polygon_at(self, 1)

    @classmethod
    def between(cls, cp0: ControlPolygon, cp1: ControlPolygon) -> "VertexHomotopy":
        """The family from cp0 to cp1, which must differ in exactly one control point."""
        if len(cp0) != len(cp1):
            raise ValueError("control polygons have different lengths")
        diff = [i for i, (a, b) in enumerate(zip(cp0, cp1)) if a != b]
        if cp0.closed and cp1.closed and diff == [0, len(cp0) - 1]:
            diff = [0]
        if len(diff) != 1:
            raise ValueError(f"polygons differ in {len(diff)} control points, expected exactly one")
        i = diff[0]
        return cls(cp0, i, cp0[i], cp1[i])


def polygon_at(h: VertexHomotopy, s: RationalLike) -> ControlPolygon:
    s = as_rational(s)
    if not 0 <= s <= 1:
        raise ValueError(f"homotopy parameter must lie in [0, 1], got {s}")
    p = h.start * (1 - s) + h.end * s
    pts = list(h.base.points)
    pts[h.vertex] = p
    if h.base.closed and h.vertex in (0, len(pts) - 1):
        pts[0] = pts[-1] = p
    return ControlPolygon(tuple(pts))


@dataclass(frozen=True)
class TransitionInterval:
    """Parameters ``lo < hi`` whose curves have certified, different knot types."""

    lo: Fraction
    hi: Fraction
    class_lo: KnotClass
    class_hi: KnotClass
    cert_lo: IsotopyCertificate
    cert_hi: IsotopyCertificate
    uncertified_gap: bool
    failed_at: Fraction | None = None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def bisect_transition(h: VertexHomotopy, tol: RationalLike, max_level: int = DEFAULT_MAX_LEVEL,
                      *, on_step: Callable[[Fraction, str], None] | None = None) -> TransitionInterval:
    """Halve [0, 1] until the two certified endpoint classes are at most ``tol`` apart.

    Stops early, flagging ``uncertified_gap``, when a midpoint cannot be certified.
    """
    tol = as_rational(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    lo, hi = Fraction(0), Fraction(1)
    class_lo, cert_lo = bezier_knot_type(polygon_at(h, lo), max_level)
    class_hi, cert_hi = bezier_knot_type(polygon_at(h, hi), max_level)
    if class_lo == class_hi:
        raise ValueError(f"both ends of the family have knot type {class_lo}")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        try:
            cls, cert = bezier_knot_type(polygon_at(h, mid), max_level)
        except CertificationError:
            if on_step:
                on_step(mid, "uncertified")
            return TransitionInterval(lo, hi, class_lo, class_hi, cert_lo, cert_hi, True, mid)
        if on_step:
            on_step(mid, str(cls))
        if cls == class_lo:
            lo, cert_lo = mid, cert
        else:
            hi, class_hi, cert_hi = mid, cls, cert
    return TransitionInterval(lo, hi, class_lo, class_hi, cert_lo, cert_hi, False)
