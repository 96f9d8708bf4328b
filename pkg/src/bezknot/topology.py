"""Closed PL knots: simplicity, projection diagrams, Gauss codes and the Jones polynomial."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._accel import kernels
from .kernel import (
    Axis, ContactKind, DegenerateInputError, Overlap, Point2, Point3, Segment2, Segment3, UNIT,
    lattice, seg2_intersection, seg3_contact, sign,
)

MAX_BRACKET_CROSSINGS = 20


class PLKnot:
    """Closed polygon given by its vertices; the closing edge is implicit."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[Sequence[Fraction]]) -> None:
        pts = [p if isinstance(p, Point3) else Point3(*p) for p in vertices]
        if len(pts) > 1 and pts[0] == pts[-1]:
            pts.pop()
        if len(pts) < 3:
            raise ValueError("a closed polygon needs at least three vertices")
        for i in range(len(pts)):
            if pts[i] == pts[(i + 1) % len(pts)]:
                raise DegenerateInputError(f"vertices {i} and {(i + 1) % len(pts)} coincide")
        self.vertices: tuple[Point3, ...] = tuple(pts)

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, PLKnot) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"PLKnot({len(self.vertices)} vertices)"

    @property
    def edge_count(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> Segment3:
        n = len(self.vertices)
        return Segment3(self.vertices[i % n], self.vertices[(i + 1) % n])

    def mirrored(self, axis: Axis = Axis.Z) -> "PLKnot":
        return PLKnot(Point3._make(-c if k == axis else c for k, c in enumerate(p)) for p in self.vertices)


def _fold_back(u: Point3, v: Point3) -> bool:
    return u.cross(v).is_zero() and u.dot(v) < 0


# ---------------------------------------------------------------------------
# simplicity


@dataclass(frozen=True)
class SimplicityCertificate:
    """Result of exhaustive edge-pair testing.

    ``collinear_joints`` flags vertices where the two incident edges continue
    in a straight line; such joints are legal (the polygon is still simple)
    and are reported so callers can see them.
    """

    simple: bool
    edge_pair: tuple[int, int] | None = None
    witness: Point3 | None = None
    collinear_joints: tuple[bool, ...] = ()
    pairs_tested: int = 0

    @property
    def verdict(self) -> str:
        return "Simple" if self.simple else "SelfIntersecting"


def is_simple(k: PLKnot) -> SimplicityCertificate:
    verts = k.vertices
    n = len(verts)
    joints = []
    for i in range(n):
        u = verts[i] - verts[i - 1]
        v = verts[(i + 1) % n] - verts[i]
        joints.append(u.cross(v).is_zero())
        if _fold_back(u, v):
            # the edges overlap beyond their common vertex
            short = min(u.dot(u), v.dot(v))
            w = v * (short / v.dot(v)) / 2
            return SimplicityCertificate(False, ((i - 1) % n, i), verts[i] + w, tuple(joints))
    ipts, _ = lattice(verts)
    pairs = kernels.seg3_candidate_pairs(ipts, True)
    for i, j in pairs:
        c = seg3_contact(k.edge(i), k.edge(j))
        if not c.disjoint:
            return SimplicityCertificate(False, (i, j), c.point, tuple(joints))
    total = n * (n - 3) // 2
    return SimplicityCertificate(True, None, None, tuple(joints), total)


# ---------------------------------------------------------------------------
# diagrams


class DegenerateProjectionError(ValueError):
    """The projection is not regular; ``feature`` names what went wrong."""

    def __init__(self, axis: Axis, feature: str) -> None:
        super().__init__(f"projection dropping {axis}: {feature}")
        self.axis = axis
        self.feature = feature


@dataclass(frozen=True)
class Crossing:
    """A transversal double point of the projection.

    ``over_param``/``under_param`` locate the point along each edge in [0, 1].
    """

    location: Point2
    over_edge: int
    under_edge: int
    over_depth: Fraction
    under_depth: Fraction
    sign: int
    over_param: Fraction
    under_param: Fraction


@dataclass(frozen=True)
class KnotDiagram:
    """Crossings of a regular projection plus the order in which the curve visits them.

    ``visits`` lists ``(crossing index, is_over)`` along the polygon.
    """

    projection_axis: Axis
    crossings: tuple[Crossing, ...]
    visits: tuple[tuple[int, bool], ...]

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)


def _vertex_on_interior(p: Point2, seg: Segment2) -> bool:
    d = seg.q - seg.p
    w = p - seg.p
    if d.cross(w):
        return False
    t = w.dot(d) / d.dot(d)
    return 0 < t < 1


def project_diagram(k: PLKnot, axis: Axis) -> KnotDiagram:
    """Exact crossings of the projection that drops coordinate ``axis``.

    The strand with the larger dropped coordinate passes over.
    """
    axis = Axis(axis)
    verts = k.vertices
    n = len(verts)
    proj = [p.drop(axis) for p in verts]
    for i in range(n):
        if proj[i] == proj[(i + 1) % n]:
            raise DegenerateProjectionError(axis, f"edge {i} projects to a point")
    segs = [Segment2(proj[i], proj[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        u = proj[i] - proj[i - 1]
        v = proj[(i + 1) % n] - proj[i]
        if not u.cross(v) and u.dot(v) < 0:
            raise DegenerateProjectionError(axis, f"edges {(i - 1) % n} and {i} fold back in projection")
    ipts, _ = lattice(proj)
    e_drop = UNIT[axis]
    found: list[tuple[int, int, Fraction, Fraction, Point2]] = []
    for i, j in kernels.seg2_contact_pairs(ipts, True):
        hit = seg2_intersection(segs[i], segs[j])
        if hit is None:
            continue
        if isinstance(hit, Overlap):
            raise DegenerateProjectionError(axis, f"edges {i} and {j} overlap in projection")
        if hit.alpha in (0, 1) or hit.beta in (0, 1):
            raise DegenerateProjectionError(axis, f"a vertex of edge {i} or {j} projects onto the other edge")
        found.append((i, j, hit.alpha, hit.beta, hit.point))
    # vertices projecting onto a non-incident edge interior are caught above only
    # when that edge pair is non-adjacent; adjacent edges cannot reach each other's
    # interior without folding back, which was already rejected.
    locations = [f[4] for f in found]
    if len(set(locations)) != len(locations):
        raise DegenerateProjectionError(axis, "three or more strands share a projected point")
    crossings = []
    for i, j, a, b, loc in found:
        ei, ej = k.edge(i), k.edge(j)
        di = ei.at(a)[axis]
        dj = ej.at(b)[axis]
        if di == dj:
            raise DegenerateInputError(f"edges {i} and {j} intersect in space")
        if di > dj:
            over, under, oa, ua, od, ud = i, j, a, b, di, dj
        else:
            over, under, oa, ua, od, ud = j, i, b, a, dj, di
        o_dir = k.edge(over).q - k.edge(over).p
        u_dir = k.edge(under).q - k.edge(under).p
        s = sign(o_dir.cross(u_dir).dot(e_drop))
        crossings.append(Crossing(loc, over, under, od, ud, s, oa, ua))
    crossings.sort(key=lambda c: (min((c.over_edge, c.over_param), (c.under_edge, c.under_param))))
    visits = []
    for idx, c in enumerate(crossings):
        visits.append(((c.over_edge, c.over_param), idx, True))
        visits.append(((c.under_edge, c.under_param), idx, False))
    visits.sort()
    return KnotDiagram(axis, tuple(crossings), tuple((idx, over) for _, idx, over in visits))


DEFAULT_AXES = (Axis.Z, Axis.X, Axis.Y)


def regular_diagram(k: PLKnot, axes: Sequence[Axis] = DEFAULT_AXES) -> KnotDiagram:
    """First regular projection among ``axes`` (XY, then YZ, then XZ by default)."""
    last = None
    for axis in axes:
        try:
            return project_diagram(k, axis)
        except DegenerateProjectionError as exc:
            last = exc
    assert last is not None
    raise last


# ---------------------------------------------------------------------------
# Gauss codes


@dataclass(frozen=True)
class GaussVisit:
    label: int
    over: bool
    sign: int

    def __str__(self) -> str:
        return f"{'O' if self.over else 'U'}{self.label}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class GaussCode:
    visits: tuple[GaussVisit, ...]

    def __post_init__(self) -> None:
        seen: dict[int, list[bool]] = {}
        for v in self.visits:
            seen.setdefault(v.label, []).append(v.over)
        for label, kinds in seen.items():
            if sorted(kinds) != [False, True]:
                raise ValueError(f"crossing {label} must be visited once over and once under")

    def __len__(self) -> int:
        return len(self.visits)

    def __str__(self) -> str:
        return " ".join(map(str, self.visits))

    @property
    def crossing_count(self) -> int:
        return len(self.visits) // 2

    @property
    def writhe(self) -> int:
        return sum(v.sign for v in self.visits) // 2

    @classmethod
    def parse(cls, text: str) -> "GaussCode":
        """Read tokens like ``O1+ U2- ...``."""
        out = []
        for tok in text.split():
            kind, body, s = tok[0].upper(), tok[1:-1], tok[-1]
            if kind not in "OU" or s not in "+-":
                raise ValueError(f"bad Gauss token {tok!r}")
            out.append(GaussVisit(int(body), kind == "O", 1 if s == "+" else -1))
        return cls(tuple(out))

    def is_alternating(self) -> bool:
        v = self.visits
        return all(v[i].over != v[(i + 1) % len(v)].over for i in range(len(v)))

    def relabelled(self) -> "GaussCode":
        """Labels 1, 2, ... in order of first appearance."""
        mapping: dict[int, int] = {}
        for v in self.visits:
            mapping.setdefault(v.label, len(mapping) + 1)
        return GaussCode(tuple(GaussVisit(mapping[v.label], v.over, v.sign) for v in self.visits))


def gauss_code(d: KnotDiagram) -> GaussCode:
    labels: dict[int, int] = {}
    out = []
    for idx, over in d.visits:
        labels.setdefault(idx, len(labels) + 1)
        out.append(GaussVisit(labels[idx], over, d.crossings[idx].sign))
    return GaussCode(tuple(out))


def _r1(vs: list[GaussVisit]) -> list[GaussVisit] | None:
    m = len(vs)
    for i in range(m):
        j = (i + 1) % m
        if vs[i].label == vs[j].label and m >= 2:
            return [v for k, v in enumerate(vs) if k not in (i, j)]
    return None


def _r2(vs: list[GaussVisit]) -> list[GaussVisit] | None:
    m = len(vs)
    if m < 4:
        return None
    pos: dict[int, dict[bool, int]] = {}
    for k, v in enumerate(vs):
        pos.setdefault(v.label, {})[v.over] = k
    for i in range(m):
        j = (i + 1) % m
        a, b = vs[i], vs[j]
        if a.label == b.label or a.over != b.over or a.sign == b.sign:
            continue
        pa, pb = pos[a.label][not a.over], pos[b.label][not b.over]
        if (pa - pb) % m in (1, m - 1):
            drop = {i, j, pa, pb}
            return [v for k, v in enumerate(vs) if k not in drop]
    return None


def reduce_gauss(code: GaussCode) -> GaussCode:
    """Apply Reidemeister I and II removals until none applies."""
    vs = list(code.visits)
    while True:
        nxt = _r1(vs)
        if nxt is None:
            nxt = _r2(vs)
        if nxt is None:
            return GaussCode(tuple(vs))
        vs = nxt


# ---------------------------------------------------------------------------
# bracket and Jones polynomial


class CapacityError(ValueError):
    """Diagram has too many crossings for the state sum."""


def planar_diagram(code: GaussCode) -> list[tuple[int, int, int, int]]:
    """Arc labels around each crossing, starting at the incoming under-arc.

    Arc ``k`` runs from visit ``k`` to visit ``k + 1``.  Around a crossing the
    four arcs are listed counterclockwise as seen from the over side.
    """
    m = len(code.visits)
    under: dict[int, int] = {}
    over: dict[int, int] = {}
    signs: dict[int, int] = {}
    for k, v in enumerate(code.visits):
        (over if v.over else under)[v.label] = k
        signs[v.label] = v.sign
    pd = []
    for label in sorted(under):
        iu, io = under[label], over[label]
        a, c = (iu - 1) % m, iu
        b_in, d_out = (io - 1) % m, io
        if signs[label] > 0:
            pd.append((a, d_out, c, b_in))
        else:
            pd.append((a, b_in, c, d_out))
    return pd


Laurent = dict  # exponent -> integer coefficient


def _poly_mul(p: Laurent, q: Laurent) -> Laurent:
    out: Laurent = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def bracket(code: GaussCode) -> Laurent:
    """Kauffman bracket in the variable A, normalised so the empty diagram is 1."""
    n = code.crossing_count
    if n > MAX_BRACKET_CROSSINGS:
        raise CapacityError(f"{n} crossings exceed the state-sum limit of {MAX_BRACKET_CROSSINGS}")
    if n == 0:
        return {0: 1}
    pd = planar_diagram(code)
    loop = {2: -1, -2: -1}
    powers = [{0: 1}]
    out: Laurent = {}
    for (n_a, loops), count in kernels.bracket_state_counts(pd).items():
        while len(powers) < loops:
            powers.append(_poly_mul(powers[-1], loop))
        e = n_a - (n - n_a)
        for e2, c2 in powers[loops - 1].items():
            out[e + e2] = out.get(e + e2, 0) + count * c2
    return {e: c for e, c in out.items() if c}


@dataclass(frozen=True)
class JonesPolynomial:
    """Laurent polynomial in t; exponents are stored as Fractions (quarter steps allowed)."""

    terms: tuple[tuple[Fraction, int], ...]

    @classmethod
    def from_dict(cls, d: dict) -> "JonesPolynomial":
        return cls(tuple(sorted((Fraction(e), c) for e, c in d.items() if c)))

    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.terms)

    def mirror(self) -> "JonesPolynomial":
        return JonesPolynomial.from_dict({-e: c for e, c in self.terms})

    def is_one(self) -> bool:
        return self.terms == ((Fraction(0), 1),)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.terms == ((Fraction(0), other),) if other else not self.terms
        return isinstance(other, JonesPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms, key=lambda t: -t[0]):
            if e == 0:
                mono = str(abs(c))
            else:
                coef = "" if abs(c) == 1 else f"{abs(c)}*"
                mono = f"{coef}t" if e == 1 else f"{coef}t^{e}" if e.denominator == 1 else f"{coef}t^({e})"
            parts.append(("-" if c < 0 else "+", mono))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, mono in parts[1:]:
            text += f" {s} {mono}"
        return text


def jones_polynomial(code: GaussCode) -> JonesPolynomial:
    """V(t) = (-A^3)^(-w) <D> with A = t^(-1/4)."""
    br = bracket(code)
    w = code.writhe
    factor = -1 if w % 2 else 1
    poly_a = {e - 3 * w: factor * c for e, c in br.items()}
    return JonesPolynomial.from_dict({Fraction(-e, 4): c for e, c in poly_a.items()})


def kauffman_jones(d: KnotDiagram | GaussCode) -> JonesPolynomial:
    code = d if isinstance(d, GaussCode) else gauss_code(d)
    return jones_polynomial(code)


TREFOIL_RIGHT = JonesPolynomial.from_dict({1: 1, 3: 1, 4: -1})
TREFOIL_LEFT = TREFOIL_RIGHT.mirror()


class KnotType(enum.Enum):
    UNKNOT = "Unknot"
    TREFOIL_LEFT = "TrefoilLeft"
    TREFOIL_RIGHT = "TrefoilRight"
    OTHER = "Other"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class KnotClass:
    """Classification by Jones polynomial.

    A Jones polynomial of 1 is reported as the unknot; that inference is only
    trusted for the small diagrams handled here.
    """

    kind: KnotType
    jones: JonesPolynomial

    @property
    def is_trefoil(self) -> bool:
        return self.kind in (KnotType.TREFOIL_LEFT, KnotType.TREFOIL_RIGHT)

    @property
    def family(self) -> str:
        """``Unknot``, ``Trefoil`` or ``Other`` (chirality dropped)."""
        return "Trefoil" if self.is_trefoil else self.kind.value

    def __str__(self) -> str:
        if self.kind is KnotType.OTHER:
            return f"Other({self.jones})"
        return self.kind.value


def classify(d: KnotDiagram | GaussCode) -> KnotClass:
    v = kauffman_jones(d)
    if v.is_one():
        return KnotClass(KnotType.UNKNOT, v)
    if v == TREFOIL_RIGHT:
        return KnotClass(KnotType.TREFOIL_RIGHT, v)
    if v == TREFOIL_LEFT:
        return KnotClass(KnotType.TREFOIL_LEFT, v)
    return KnotClass(KnotType.OTHER, v)
