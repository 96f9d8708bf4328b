"""Exact rational scalars, points, planes and the geometric predicates built on them.

Every coordinate in the package is a :class:`fractions.Fraction`.  Predicates
return exact signs; nothing here ever rounds.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, NamedTuple, Sequence, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+)?$")


class DegenerateInputError(ValueError):
    """Input violates a general-position requirement (overlap, degenerate edge, ...)."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (decimal integers, optional leading minus)."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def sign(value) -> int:
    return (value > 0) - (value < 0)


class Axis(enum.IntEnum):
    X = 0
    Y = 1
    Z = 2

    def __str__(self) -> str:
        return self.name


class Point3(tuple):
    """Immutable 3D point with exact rational coordinates."""

    __slots__ = ()

    def __new__(cls, x: RationalLike, y: RationalLike, z: RationalLike) -> "Point3":
        return tuple.__new__(cls, (as_rational(x), as_rational(y), as_rational(z)))

    @classmethod
    def _make(cls, coords: Iterable[Fraction]) -> "Point3":
        # no coercion: callers guarantee Fraction inputs
        return tuple.__new__(cls, tuple(coords))

    @property
    def x(self) -> Fraction:
        return self[0]

    @property
    def y(self) -> Fraction:
        return self[1]

    @property
    def z(self) -> Fraction:
        return self[2]

    def __add__(self, other: "Point3") -> "Point3":  # type: ignore[override]
        return tuple.__new__(Point3, (self[0] + other[0], self[1] + other[1], self[2] + other[2]))

    def __sub__(self, other: "Point3") -> "Point3":
        return tuple.__new__(Point3, (self[0] - other[0], self[1] - other[1], self[2] - other[2]))

    def __mul__(self, k) -> "Point3":  # type: ignore[override]
        return tuple.__new__(Point3, (self[0] * k, self[1] * k, self[2] * k))

    __rmul__ = __mul__

    def __truediv__(self, k) -> "Point3":
        return tuple.__new__(Point3, (self[0] / k, self[1] / k, self[2] / k))

    def __neg__(self) -> "Point3":
        return tuple.__new__(Point3, (-self[0], -self[1], -self[2]))

    def dot(self, other: Sequence[Fraction]) -> Fraction:
        return self[0] * other[0] + self[1] * other[1] + self[2] * other[2]

    def cross(self, other: "Point3") -> "Point3":
        ax, ay, az = self
        bx, by, bz = other
        return tuple.__new__(Point3, (ay * bz - az * by, az * bx - ax * bz, ax * by - ay * bx))

    def is_zero(self) -> bool:
        return not (self[0] or self[1] or self[2])

    def drop(self, axis: Axis) -> "Point2":
        """Project by deleting one coordinate; the others keep their x, y, z order."""
        kept = [c for i, c in enumerate(self) if i != axis]
        return tuple.__new__(Point2, tuple(kept))

    def __repr__(self) -> str:
        return "Point3({}, {}, {})".format(*map(str, self))


class Point2(tuple):
    """Immutable planar point (u, v)."""

    __slots__ = ()

    def __new__(cls, u: RationalLike, v: RationalLike) -> "Point2":
        return tuple.__new__(cls, (as_rational(u), as_rational(v)))

    @property
    def u(self) -> Fraction:
        return self[0]

    @property
    def v(self) -> Fraction:
        return self[1]

    def __add__(self, other: "Point2") -> "Point2":  # type: ignore[override]
        return tuple.__new__(Point2, (self[0] + other[0], self[1] + other[1]))

    def __sub__(self, other: "Point2") -> "Point2":
        return tuple.__new__(Point2, (self[0] - other[0], self[1] - other[1]))

    def __mul__(self, k) -> "Point2":  # type: ignore[override]
        return tuple.__new__(Point2, (self[0] * k, self[1] * k))

    __rmul__ = __mul__

    def cross(self, other: "Point2") -> Fraction:
        return self[0] * other[1] - self[1] * other[0]

    def dot(self, other: "Point2") -> Fraction:
        return self[0] * other[0] + self[1] * other[1]

    def __repr__(self) -> str:
        return "Point2({}, {})".format(*map(str, self))


ORIGIN = Point3(0, 0, 0)
UNIT = {Axis.X: Point3(1, 0, 0), Axis.Y: Point3(0, 1, 0), Axis.Z: Point3(0, 0, 1)}


class Plane(NamedTuple):
    """The set a*x + b*y + c*z + d = 0; the sign of the left side gives the side."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @classmethod
    def through(cls, point: Point3, normal: Sequence[RationalLike]) -> "Plane":
        n = Point3(*normal)
        if n.is_zero():
            raise ValueError("plane normal must be non-zero")
        return cls(n[0], n[1], n[2], -n.dot(point))

    @property
    def normal(self) -> Point3:
        return Point3._make((self.a, self.b, self.c))

    def evaluate(self, p: Sequence[Fraction]) -> Fraction:
        return self.a * p[0] + self.b * p[1] + self.c * p[2] + self.d

    def flipped(self) -> "Plane":
        return Plane(-self.a, -self.b, -self.c, -self.d)

    def primitive(self) -> "Plane":
        """Same oriented plane with coprime integer coefficients (canonical key)."""
        coeffs = [Fraction(v) for v in self]
        den = lcm(*(v.denominator for v in coeffs))
        ints = [int(v * den) for v in coeffs]
        g = gcd(*ints) or 1
        return Plane(*(Fraction(v // g) for v in ints))

    def __str__(self) -> str:
        return "({}, {}, {}, {})".format(*map(str, self))


def plane_side(plane: Plane, p: Sequence[Fraction]) -> int:
    return sign(plane.evaluate(p))


@dataclass(frozen=True)
class Segment3:
    p: Point3
    q: Point3

    def __post_init__(self) -> None:
        if self.p == self.q:
            raise DegenerateInputError("segment endpoints coincide")

    def at(self, t: Fraction) -> Point3:
        return self.p + (self.q - self.p) * t


@dataclass(frozen=True)
class Segment2:
    p: Point2
    q: Point2

    def __post_init__(self) -> None:
        if self.p == self.q:
            raise DegenerateInputError("segment endpoints coincide")

    def at(self, t: Fraction) -> Point2:
        return self.p + (self.q - self.p) * t


def orient2d(a: Point2, b: Point2, c: Point2) -> int:
    """Sign of det(b - a, c - a): +1 counterclockwise, -1 clockwise, 0 collinear."""
    return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def collinear3(a: Point3, b: Point3, c: Point3) -> bool:
    return (b - a).cross(c - a).is_zero()


@dataclass(frozen=True)
class SegmentCrossing:
    """Unique common point of two planar segments with its parameters on each."""

    point: Point2
    alpha: Fraction
    beta: Fraction


@dataclass(frozen=True)
class Overlap:
    """Collinear planar segments sharing a sub-segment [start, end]."""

    start: Point2
    end: Point2


def seg2_intersection(s: Segment2, t: Segment2) -> SegmentCrossing | Overlap | None:
    """Exact intersection of two closed planar segments.

    Returns ``None`` when they are disjoint.  ``alpha`` and ``beta`` locate the
    common point as ``s.p + alpha*(s.q - s.p) == t.p + beta*(t.q - t.p)``.
    """
    d1 = s.q - s.p
    d2 = t.q - t.p
    w = t.p - s.p
    den = d1.cross(d2)
    if den:
        alpha = w.cross(d2) / den
        beta = w.cross(d1) / den
        if 0 <= alpha <= 1 and 0 <= beta <= 1:
            return SegmentCrossing(s.p + d1 * alpha, alpha, beta)
        return None
    if w.cross(d1):
        return None
    # collinear: parametrise t's endpoints along s
    dd = d1.dot(d1)
    t0 = w.dot(d1) / dd
    t1 = (t.q - s.p).dot(d1) / dd
    lo, hi = max(Fraction(0), min(t0, t1)), min(Fraction(1), max(t0, t1))
    if lo > hi:
        return None
    if lo == hi:
        beta = (lo - t0) / (t1 - t0)
        return SegmentCrossing(s.p + d1 * lo, lo, beta)
    return Overlap(s.p + d1 * lo, s.p + d1 * hi)


class ContactKind(enum.Enum):
    DISJOINT = "disjoint"
    TOUCHING = "touching"
    CROSSING = "crossing"


@dataclass(frozen=True)
class Contact:
    kind: ContactKind
    point: Point3 | None = None

    @property
    def disjoint(self) -> bool:
        return self.kind is ContactKind.DISJOINT


_DISJOINT = Contact(ContactKind.DISJOINT)


def seg3_contact(s: Segment3, t: Segment3) -> Contact:
    """Classify how two closed 3D segments meet.

    ``TOUCHING`` means the common point is an endpoint of at least one segment;
    ``CROSSING`` means interior-interior contact, including collinear overlap
    (the witness is then the midpoint of the shared piece).
    """
    u = s.q - s.p
    v = t.q - t.p
    w = t.p - s.p
    n = u.cross(v)
    if not n.is_zero():
        if w.dot(n):
            return _DISJOINT
        nn = n.dot(n)
        alpha = w.cross(v).dot(n) / nn
        beta = w.cross(u).dot(n) / nn
        if not (0 <= alpha <= 1 and 0 <= beta <= 1):
            return _DISJOINT
        point = s.p + u * alpha
        if alpha in (0, 1) or beta in (0, 1):
            return Contact(ContactKind.TOUCHING, point)
        return Contact(ContactKind.CROSSING, point)
    if not w.cross(u).is_zero():
        return _DISJOINT
    uu = u.dot(u)
    t0 = w.dot(u) / uu
    t1 = (t.q - s.p).dot(u) / uu
    lo, hi = max(Fraction(0), min(t0, t1)), min(Fraction(1), max(t0, t1))
    if lo > hi:
        return _DISJOINT
    if lo == hi:
        return Contact(ContactKind.TOUCHING, s.p + u * lo)
    return Contact(ContactKind.CROSSING, s.p + u * ((lo + hi) / 2))


def lattice(points: Sequence[Sequence[Fraction]]) -> tuple[list[tuple[int, ...]], int]:
    """Scale points by the lcm of all denominators.

    Returns integer coordinates and the scale factor.  Uniform positive scaling
    preserves every sign predicate in this package, so the integer copies can be
    handed to the compiled kernels.
    """
    den = 1
    for p in points:
        for c in p:
            d = c.denominator
            if d != 1 and den % d:
                den = lcm(den, d)
    if den == 1:
        return [tuple(c.numerator for c in p) for p in points], 1
    return [tuple(c.numerator * (den // c.denominator) for c in p) for p in points], den
