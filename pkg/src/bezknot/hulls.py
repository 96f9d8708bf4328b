"""Exact convex hulls, separating planes between hulls, and trimmed hull enclosures."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from ._accel import kernels
from .bezier import ControlPolygon, evaluate
from .kernel import DegenerateInputError, Plane, Point3, UNIT, lattice, sign
from .lp import linprog


class Degeneracy(enum.Enum):
    FULL3D = "Full3D"
    PLANAR = "Planar"
    COLLINEAR = "Collinear"
    POINT = "Point"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ConvexHull3:
    """Extreme points plus an outward halfspace description.

    For a full-dimensional hull ``facets`` are the boundary faces, each with its
    vertex indices in cyclic order.  Lower-dimensional hulls use the same
    representation: a planar polygon carries its supporting plane in both
    orientations plus one plane per edge, a segment carries end caps and four
    planes around its line, and a point carries six axis planes.  In every case
    a point is in the hull iff it is on the non-positive side of every plane.
    """

    vertices: tuple[Point3, ...]
    facets: tuple[tuple[Plane, tuple[int, ...]], ...]
    degeneracy: Degeneracy

    def contains(self, p: Sequence[Fraction]) -> bool:
        return all(plane.evaluate(p) <= 0 for plane, _ in self.facets)

    def edges(self) -> list[tuple[int, int]]:
        if self.degeneracy is Degeneracy.POINT:
            return []
        if self.degeneracy is Degeneracy.COLLINEAR:
            return [(0, 1)]
        seen = set()
        for _, cyc in self.facets:
            if len(cyc) < 2:
                continue
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a != b:
                    seen.add((min(a, b), max(a, b)))
        return sorted(seen)

    def planes(self) -> list[Plane]:
        return [plane for plane, _ in self.facets]


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for c in v:
        g = gcd(g, c)
    return tuple(c // g for c in v) if g > 1 else tuple(v)


def _icross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _isub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _idot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _hull2d(idx: list[int], pts2: list[tuple]) -> list[int]:
    """Counterclockwise extreme-point cycle (monotone chain, collinear points dropped)."""
    order = sorted(set(idx), key=lambda i: pts2[i])
    if len(order) <= 2:
        return order

    def turn(o, a, b):
        return (pts2[a][0] - pts2[o][0]) * (pts2[b][1] - pts2[o][1]) - \
               (pts2[a][1] - pts2[o][1]) * (pts2[b][0] - pts2[o][0])

    lower: list[int] = []
    for i in order:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(order):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def _project_away(normal: Sequence[int]) -> int:
    """Coordinate to drop so a plane with this normal projects injectively."""
    mags = [abs(c) for c in normal]
    return mags.index(max(mags))


def _drop(p, axis):
    return tuple(c for i, c in enumerate(p) if i != axis)


def _affine_frame(ipts):
    """Indices realising the affine dimension: [p0], [p0,p1], [p0,p1,p2] or four."""
    p0 = 0
    p1 = next((i for i in range(len(ipts)) if ipts[i] != ipts[p0]), None)
    if p1 is None:
        return [p0]
    u = _isub(ipts[p1], ipts[p0])
    p2 = None
    for i in range(len(ipts)):
        if any(_icross(u, _isub(ipts[i], ipts[p0]))):
            p2 = i
            break
    if p2 is None:
        return [p0, p1]
    n = _icross(u, _isub(ipts[p2], ipts[p0]))
    for i in range(len(ipts)):
        if _idot(n, _isub(ipts[i], ipts[p0])):
            return [p0, p1, p2, i]
    return [p0, p1, p2]


def convex_hull(points: Iterable[Sequence[Fraction]]) -> ConvexHull3:
    pts = []
    seen = set()
    for p in points:
        p = p if isinstance(p, Point3) else Point3(*p)
        if p not in seen:
            seen.add(p)
            pts.append(p)
    if not pts:
        raise ValueError("convex hull of an empty point set")
    ipts, _ = lattice(pts)
    frame = _affine_frame(ipts)
    if len(frame) == 1:
        return _point_hull(pts[0])
    if len(frame) == 2:
        return _segment_hull(pts, ipts, frame)
    if len(frame) == 3:
        return _planar_hull(pts, ipts, frame)
    return _solid_hull(pts, ipts)


def _point_hull(p: Point3) -> ConvexHull3:
    facets = []
    for axis in UNIT.values():
        facets.append((Plane.through(p, axis), (0,)))
        facets.append((Plane.through(p, -axis), (0,)))
    return ConvexHull3((p,), tuple(facets), Degeneracy.POINT)


def _segment_hull(pts, ipts, frame) -> ConvexHull3:
    u = _isub(ipts[frame[1]], ipts[frame[0]])
    keyed = sorted(range(len(pts)), key=lambda i: _idot(u, ipts[i]))
    a, b = pts[keyed[0]], pts[keyed[-1]]
    ui = Point3(*u)
    helper = min(UNIT.values(), key=lambda e: abs(ui.dot(e)))
    v = ui.cross(helper)
    w = ui.cross(v)
    facets = [(Plane.through(b, ui), (1,)), (Plane.through(a, -ui), (0,))]
    for n in (v, -v, w, -w):
        facets.append((Plane.through(a, n), (0, 1)))
    return ConvexHull3((a, b), tuple(facets), Degeneracy.COLLINEAR)


def _planar_hull(pts, ipts, frame) -> ConvexHull3:
    p0, p1, p2 = (ipts[i] for i in frame)
    n = _primitive(_icross(_isub(p1, p0), _isub(p2, p0)))
    axis = _project_away(n)
    pts2 = [_drop(p, axis) for p in ipts]
    cyc = _hull2d(list(range(len(ipts))), pts2)
    verts = tuple(pts[i] for i in cyc)
    nf = Point3(*n)
    k = len(verts)
    facets = [(Plane.through(verts[0], nf), tuple(range(k))),
              (Plane.through(verts[0], -nf), tuple(range(k)))]
    centroid = sum(verts[1:], verts[0]) / k
    for i in range(k):
        a, b = verts[i], verts[(i + 1) % k]
        en = (b - a).cross(nf)
        plane = Plane.through(a, en)
        if plane.evaluate(centroid) > 0:
            plane = plane.flipped()
        facets.append((plane, (i, (i + 1) % k)))
    return ConvexHull3(verts, tuple(facets), Degeneracy.PLANAR)


def _solid_hull(pts, ipts) -> ConvexHull3:
    found: dict[tuple[int, ...], list[int]] = {}
    npts = len(ipts)
    for i, j, k in combinations(range(npts), 3):
        pi = ipts[i]
        n = _icross(_isub(ipts[j], pi), _isub(ipts[k], pi))
        if not any(n):
            continue
        n = _primitive(n)
        d = _idot(n, pi)
        lo = hi = 0
        on = []
        for m in range(npts):
            s = _idot(n, ipts[m]) - d
            if s < lo:
                lo = s
            elif s > hi:
                hi = s
            elif s == 0:
                on.append(m)
            if lo < 0 < hi:
                break
        else:
            if hi > 0:
                n = tuple(-c for c in n)
            key = n
            if key not in found:
                found[key] = on
    vertex_ids: list[int] = []
    index_of: dict[int, int] = {}
    facet_cycles = []
    for n, on in found.items():
        axis = _project_away(n)
        pts2 = {m: _drop(ipts[m], axis) for m in on}
        cyc = _hull2d(on, pts2)
        for m in cyc:
            if m not in index_of:
                index_of[m] = len(vertex_ids)
                vertex_ids.append(m)
        facet_cycles.append((n, cyc))
    verts = tuple(pts[m] for m in vertex_ids)
    facets = []
    for n, cyc in facet_cycles:
        plane = Plane.through(pts[cyc[0]], Point3(*n))
        facets.append((plane, tuple(index_of[m] for m in cyc)))
    return ConvexHull3(verts, tuple(facets), Degeneracy.FULL3D)


# ---------------------------------------------------------------------------
# separation


class Verdict(enum.Enum):
    SEPARATED = "Separated"
    SHARED_POINTS_ONLY = "SharedPointsOnly"
    OVERLAPPING = "Overlapping"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SeparationResult:
    """Outcome of a hull disjointness test.

    ``plane`` is oriented with the first hull on its negative side.  A result
    combining several convex parts (see :func:`enclosure_disjoint`) has no
    single plane; its per-part results are in ``parts``.
    """

    verdict: Verdict
    plane: Plane | None = None
    shared: tuple[Point3, ...] = ()
    witness: Point3 | None = None
    parts: tuple["SeparationResult", ...] = field(default=())

    @property
    def disjoint(self) -> bool:
        """True unless the hulls meet outside the allowed shared points."""
        return self.verdict is not Verdict.OVERLAPPING


def _lattice_normal(n: Sequence[Fraction]) -> tuple[int, ...]:
    ints, _ = lattice([n])
    return _primitive(ints[0])


def _reduced_lattice(points: Sequence[Point3]) -> list[tuple[int, ...]]:
    """Integer copies translated to the first point and divided by the common gcd.

    Translation and positive scaling leave every separating-axis comparison unchanged.
    """
    ipts, _ = lattice(points)
    ox, oy, oz = ipts[0]
    rel = [(x - ox, y - oy, z - oz) for x, y, z in ipts]
    g = 0
    for p in rel:
        for c in p:
            g = gcd(g, c)
    if g > 1:
        rel = [(x // g, y // g, z // g) for x, y, z in rel]
    return rel


def _face_normals(H: ConvexHull3, ipts: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    if H.degeneracy is not Degeneracy.FULL3D:
        return [_lattice_normal(plane.normal) for plane in H.planes()]
    out = []
    for _, cyc in H.facets:
        p0, p1, p2 = (ipts[i] for i in cyc[:3])
        out.append(_icross(_isub(p1, p0), _isub(p2, p0)))
    return out


def _candidate_normals(A: ConvexHull3, B: ConvexHull3, ia, ib):
    """Separating-axis candidates in two batches: axes and face normals, then edge crosses."""
    first = [(1, 0, 0), (0, 1, 0), (0, 0, 1)] + _face_normals(A, ia) + _face_normals(B, ib)
    yield [n for n in first if any(n)]
    ea = [_isub(ia[j], ia[i]) for i, j in A.edges()]
    eb = [_isub(ib[j], ib[i]) for i, j in B.edges()]
    crosses = []
    for u in ea:
        for v in eb:
            c = _icross(u, v)
            if any(c):
                crosses.append(c)
    yield crosses


def _plane_between(n: Sequence[int], hi_a: Fraction, lo_b: Fraction) -> Plane:
    c = (hi_a + lo_b) / 2
    return Plane(Fraction(n[0]), Fraction(n[1]), Fraction(n[2]), -c)


def _project_range(n, pts):
    vals = [n[0] * p[0] + n[1] * p[1] + n[2] * p[2] for p in pts]
    return min(vals), max(vals)


def _only_point_on_plane(n, p, others_a, others_b) -> int:
    """+1 if A\\{p} is strictly below and B\\{p} strictly above the plane through p, -1 reversed."""
    ref = n[0] * p[0] + n[1] * p[1] + n[2] * p[2]
    sa = {sign(n[0] * a[0] + n[1] * a[1] + n[2] * a[2] - ref) for a in others_a}
    sb = {sign(n[0] * b[0] + n[1] * b[1] + n[2] * b[2] - ref) for b in others_b}
    if sa <= {-1} and sb <= {1}:
        return 1
    if sa <= {1} and sb <= {-1}:
        return -1
    return 0


def _lp_strict_plane(va, vb) -> Plane | None:
    # n.a - c <= -1, n.b - c >= 1; variables n0 n1 n2 c, all free
    A_ub = [[a[0], a[1], a[2], -1] for a in va] + [[-b[0], -b[1], -b[2], 1] for b in vb]
    b_ub = [-1] * len(va) + [-1] * len(vb)
    res = linprog([0, 0, 0, 0], A_ub=A_ub, b_ub=b_ub, free=range(4))
    if res.status != "optimal":
        return None
    n0, n1, n2, c = res.x
    return Plane(n0, n1, n2, -c)


def _lp_common_point(va, vb, objective=None) -> Point3 | None:
    # lambda over va, mu over vb: sum lambda a == sum mu b, both convex weights
    na, nb = len(va), len(vb)
    A_eq = []
    b_eq = []
    for k in range(3):
        A_eq.append([a[k] for a in va] + [-b[k] for b in vb])
        b_eq.append(0)
    A_eq.append([1] * na + [0] * nb)
    b_eq.append(1)
    A_eq.append([0] * na + [1] * nb)
    b_eq.append(1)
    c = [0] * (na + nb)
    if objective is not None:
        c = [-sum(o * x for o, x in zip(objective, a)) for a in va] + [0] * nb
    res = linprog(c, A_eq=A_eq, b_eq=b_eq)
    if res.status != "optimal":
        return None
    lam = res.x[:na]
    pt = Point3(0, 0, 0)
    for w, a in zip(lam, va):
        if w:
            pt = pt + a * w
    return pt


def _lp_cone_plane(p, va, vb) -> Plane | None:
    # plane through p: n.(a-p) <= -1 for a in va, n.(b-p) >= 1 for b in vb
    A_ub = [[a[0] - p[0], a[1] - p[1], a[2] - p[2]] for a in va] + \
           [[p[0] - b[0], p[1] - b[1], p[2] - b[2]] for b in vb]
    res = linprog([0, 0, 0], A_ub=A_ub, b_ub=[-1] * len(A_ub), free=range(3))
    if res.status != "optimal":
        return None
    return Plane.through(p, res.x)


def _lp_weak_plane(p, va, vb) -> Plane | None:
    # n.(a-p) <= 0, n.(b-p) >= 0, not identically zero on both sets
    A_ub = [[a[0] - p[0], a[1] - p[1], a[2] - p[2]] for a in va] + \
           [[p[0] - b[0], p[1] - b[1], p[2] - b[2]] for b in vb]
    total = [sum(b[k] - p[k] for b in vb) - sum(a[k] - p[k] for a in va) for k in range(3)]
    res = linprog([0, 0, 0], A_ub=A_ub, b_ub=[0] * len(A_ub), A_eq=[total], b_eq=[1], free=range(3))
    if res.status != "optimal":
        return None
    return Plane.through(p, res.x)


def _other_common_point(p, va, vb) -> Point3 | None:
    """A point of hull(va) and hull(vb) other than ``p``, or None if they meet only in p."""
    for k in range(3):
        for s in (1, -1):
            obj = [0, 0, 0]
            obj[k] = s
            q = _lp_common_point(va, vb, obj)
            if q is None:
                return None
            if q != p:
                return q
    return None


def separate(A: ConvexHull3, B: ConvexHull3, allowed_shared: Sequence[Sequence[Fraction]] = ()) -> SeparationResult:
    """Decide whether two hulls are disjoint apart from allowed common points.

    The separating-axis family is scanned first; if no candidate works the
    question is settled by exact linear programs.
    """
    shared = []
    for p in allowed_shared:
        p = p if isinstance(p, Point3) else Point3(*p)
        if p not in shared and A.contains(p) and B.contains(p):
            shared.append(p)
    va, vb = list(A.vertices), list(B.vertices)
    if len(shared) >= 2:
        return SeparationResult(Verdict.OVERLAPPING, witness=(shared[0] + shared[1]) / 2)
    ipts = _reduced_lattice(va + vb)
    ia, ib = ipts[:len(va)], ipts[len(va):]
    if not shared:
        for normals in _candidate_normals(A, B, ia, ib):
            k, side = kernels.separating_axis(normals, ia, ib, 0, True)
            if k >= 0:
                n = normals[k] if side > 0 else tuple(-c for c in normals[k])
                _, hi_a = _project_range(n, va)
                lo_b, _ = _project_range(n, vb)
                return SeparationResult(Verdict.SEPARATED, plane=_plane_between(n, hi_a, lo_b))
        plane = _lp_strict_plane(va, vb)
        if plane is not None:
            return SeparationResult(Verdict.SEPARATED, plane=plane)
        return SeparationResult(Verdict.OVERLAPPING, witness=_lp_common_point(va, vb))

    p = shared[0]
    oa = [a for a in va if a != p]
    ob = [b for b in vb if b != p]
    for normals in _candidate_normals(A, B, ia, ib):
        start = 0
        while True:
            k, _ = kernels.separating_axis(normals, ia, ib, start, False)
            if k < 0:
                break
            side = _only_point_on_plane(normals[k], p, oa, ob)
            if side:
                n = Point3(*normals[k]) * side
                return SeparationResult(Verdict.SHARED_POINTS_ONLY, plane=Plane.through(p, n), shared=(p,))
            start = k + 1
    plane = _lp_cone_plane(p, oa, ob)
    if plane is not None:
        return SeparationResult(Verdict.SHARED_POINTS_ONLY, plane=plane, shared=(p,))
    q = _other_common_point(p, va, vb)
    if q is not None:
        return SeparationResult(Verdict.OVERLAPPING, witness=q)
    # hulls meet exactly in p but p is not a vertex of one of them
    return SeparationResult(Verdict.SHARED_POINTS_ONLY, plane=_lp_weak_plane(p, oa, ob), shared=(p,))


# ---------------------------------------------------------------------------
# planes against polylines


def plane_polyline_intersections(plane: Plane, polyline: Sequence[Point3]) -> tuple[int, list[Point3]]:
    """Distinct points where a polyline meets a plane, in polyline order."""
    pts = [p if isinstance(p, Point3) else Point3(*p) for p in polyline]
    vals = [plane.evaluate(p) for p in pts]
    out: list[Point3] = []

    def add(q):
        if q not in out:
            out.append(q)

    for i in range(len(pts)):
        if vals[i] == 0:
            if i + 1 < len(pts) and vals[i + 1] == 0 and pts[i] != pts[i + 1]:
                raise DegenerateInputError(f"polyline edge {i} lies in the plane")
            add(pts[i])
        elif i + 1 < len(pts) and vals[i + 1] and (vals[i] > 0) != (vals[i + 1] > 0):
            t = vals[i] / (vals[i] - vals[i + 1])
            add(pts[i] + (pts[i + 1] - pts[i]) * t)
    return len(out), out


def clip(hull: ConvexHull3, plane: Plane) -> ConvexHull3 | None:
    """Hull intersected with the closed side ``plane >= 0``; None if empty."""
    verts = hull.vertices
    vals = [plane.evaluate(v) for v in verts]
    kept = [v for v, s in zip(verts, vals) if s >= 0]
    for (a, sa), (b, sb) in combinations(zip(verts, vals), 2):
        if (sa > 0 and sb < 0) or (sa < 0 and sb > 0):
            t = sa / (sa - sb)
            kept.append(a + (b - a) * t)
    if not kept:
        return None
    return convex_hull(kept)


# ---------------------------------------------------------------------------
# trimmed enclosures


class EnclosureError(ValueError):
    """No orientation of the two half-spaces keeps every control point."""


@dataclass(frozen=True)
class Enclosure:
    """Points of ``hull`` lying on the non-negative side of either plane."""

    hull: ConvexHull3
    left_half: Plane
    right_half: Plane

    def contains(self, p: Sequence[Fraction]) -> bool:
        return self.hull.contains(p) and (self.left_half.evaluate(p) >= 0 or self.right_half.evaluate(p) >= 0)

    def parts(self) -> list[ConvexHull3]:
        out = []
        for plane in (self.left_half, self.right_half):
            part = clip(self.hull, plane)
            if part is not None:
                out.append(part)
        return out


def _as_point(p) -> Point3:
    return p if isinstance(p, Point3) else Point3(*p)


def build_enclosure(cp: ControlPolygon, mid: Sequence[Fraction], normal_L: Sequence[Fraction],
                    normal_R: Sequence[Fraction]) -> Enclosure:
    """Hull of ``cp`` trimmed by planes through (first, mid) and (mid, last)."""
    mid = _as_point(mid)
    nl, nr = _as_point(normal_L), _as_point(normal_R)
    for name, n, a, b in (("left", nl, cp.first, mid), ("right", nr, mid, cp.last)):
        if n.is_zero():
            raise ValueError(f"{name} normal is zero")
        if n.dot(b - a):
            raise ValueError(f"{name} normal is not orthogonal to its line")
    hull = convex_hull(cp.points)
    base_l = Plane.through(cp.first, nl)
    base_r = Plane.through(mid, nr)
    for sl, sr in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        pl = base_l if sl > 0 else base_l.flipped()
        pr = base_r if sr > 0 else base_r.flipped()
        E = Enclosure(hull, pl, pr)
        if all(E.contains(p) for p in cp.points):
            return E
    raise EnclosureError("some control point lies outside both half-spaces for every orientation")


def enclosure_disjoint(E: Enclosure, other: ConvexHull3,
                       allowed_shared: Sequence[Sequence[Fraction]] = ()) -> SeparationResult:
    """Separate each convex part of an enclosure from ``other``."""
    results = tuple(separate(part, other, allowed_shared) for part in E.parts())
    for r in results:
        if r.verdict is Verdict.OVERLAPPING:
            return SeparationResult(Verdict.OVERLAPPING, witness=r.witness, parts=results)
    shared: list[Point3] = []
    for r in results:
        for p in r.shared:
            if p not in shared:
                shared.append(p)
    verdict = Verdict.SHARED_POINTS_ONLY if shared else Verdict.SEPARATED
    return SeparationResult(verdict, shared=tuple(shared), parts=results)


class EvidenceError(AssertionError):
    """A step of the curve-in-enclosure argument failed."""

    def __init__(self, step: str, detail: str) -> None:
        super().__init__(f"{step}: {detail}")
        self.step = step


@dataclass(frozen=True)
class EnclosureEvidence:
    left_count: int
    left_points: tuple[Point3, ...]
    right_count: int
    right_points: tuple[Point3, ...]
    samples: tuple[tuple[Fraction, Point3, bool], ...]


def curve_in_enclosure(cp: ControlPolygon, E: Enclosure, samples: Sequence[Fraction]) -> EnclosureEvidence:
    """Check the computational facts behind the claim that the curve stays in E.

    Each trimming plane must meet the control polygon exactly twice (so the
    curve meets it at most twice), and every sampled curve point must be in E.
    """
    nl, ptl = plane_polyline_intersections(E.left_half, cp.points)
    if nl != 2:
        raise EvidenceError("left plane count", f"expected 2 intersections, found {nl}")
    nr, ptr = plane_polyline_intersections(E.right_half, cp.points)
    if nr != 2:
        raise EvidenceError("right plane count", f"expected 2 intersections, found {nr}")
    rows = []
    for s in samples:
        s = Fraction(s)
        if not 0 < s < 1:
            raise ValueError(f"sample {s} outside (0, 1)")
        q = evaluate(cp, s)
        inside = E.contains(q)
        if not inside:
            raise EvidenceError("sample membership", f"c({s}) = {q} is outside the enclosure")
        rows.append((s, q, inside))
    return EnclosureEvidence(nl, tuple(ptl), nr, tuple(ptr), tuple(rows))


__all__ = [
    "ConvexHull3", "Degeneracy", "Enclosure", "EnclosureError", "EnclosureEvidence", "EvidenceError",
    "SeparationResult", "Verdict", "build_enclosure", "clip", "convex_hull", "curve_in_enclosure",
    "enclosure_disjoint", "plane_polyline_intersections", "separate",
]
