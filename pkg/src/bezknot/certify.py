"""Certificates that a closed Bezier curve is ambient isotopic to a PL refinement.

The argument checked here: if every sub-curve is strictly monotone in some
coordinate and the convex hulls of the sub-control polygons meet only at
shared subdivision points, the curve and the union of sub-control polygons
have the same knot type.  The knot type of that PL polygon is then read off a
projection diagram.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .bezier import HALF, ControlPolygon, evaluate, monotone_axes, scale_for_subdivision, subdivide_levels
from .hulls import (
    ConvexHull3, Enclosure, EnclosureError, EnclosureEvidence, EvidenceError, SeparationResult, Verdict,
    build_enclosure, convex_hull, curve_in_enclosure, enclosure_disjoint, separate,
)
from .kernel import Axis, ContactKind, DegenerateInputError, Point3, Segment3, UNIT, seg3_contact, sign
from .topology import (
    DegenerateProjectionError, KnotClass, KnotDiagram, PLKnot, SimplicityCertificate, classify,
    is_simple, project_diagram, regular_diagram,
)

DEFAULT_MAX_LEVEL = 6
ENCLOSURE_SAMPLES = (Fraction(1, 4), HALF, Fraction(3, 4))


class CertificationError(RuntimeError):
    """No certificate up to the level limit; ``obstruction`` says what blocked the last level."""

    def __init__(self, message: str, obstruction: dict) -> None:
        super().__init__(message)
        self.obstruction = obstruction


@dataclass(frozen=True)
class PieceCertificate:
    index: int
    monotone_axis: Axis
    hull: ConvexHull3
    piece: ControlPolygon


@dataclass(frozen=True)
class EnclosureRepair:
    """A trimmed hull that replaces one piece's hull in the disjointness argument."""

    piece: int
    enclosure: Enclosure
    evidence: EnclosureEvidence
    normal_left: Point3
    normal_right: Point3
    against: dict[int, SeparationResult]


@dataclass(frozen=True)
class IsotopyCertificate:
    source: ControlPolygon
    level: int
    scale_exponent: int
    pieces: tuple[PieceCertificate, ...]
    separations: dict[tuple[int, int], SeparationResult]
    enclosures: tuple[EnclosureRepair, ...]
    refinement: PLKnot
    simplicity: SimplicityCertificate
    diagram: KnotDiagram
    pl_knot_class: KnotClass

    @property
    def diagram_axis(self) -> Axis:
        return self.diagram.projection_axis


def shared_endpoints(pieces: Sequence[ControlPolygon], i: int, j: int) -> list[Point3]:
    ends_i = (pieces[i].first, pieces[i].last)
    ends_j = (pieces[j].first, pieces[j].last)
    out = []
    for p in ends_i:
        if p in ends_j and p not in out:
            out.append(p)
    return out


def _separation_matrix(pieces, hulls):
    results: dict[tuple[int, int], SeparationResult] = {}
    n = len(pieces)
    for i in range(n):
        for j in range(i + 1, n):
            results[i, j] = separate(hulls[i], hulls[j], shared_endpoints(pieces, i, j))
    return results


def _line_normals(a: Point3, b: Point3) -> list[Point3]:
    """Normals to the line through a and b that are parallel to a coordinate axis plane (d x e)."""
    d = b - a
    out = []
    for axis in (Axis.Z, Axis.Y, Axis.X):
        n = d.cross(UNIT[axis])
        if not n.is_zero():
            out.append(n)
    return out


def _try_enclosure(pieces, hulls, k, partner, normals=None):
    """Build an enclosure for piece k that clears every other hull; None if none found.

    The hull it overlapped (``partner``) is tested first so hopeless candidates fail fast.
    """
    cp = pieces[k]
    mid = evaluate(cp, HALF)
    if normals is None:
        cand = list(product(_line_normals(cp.first, mid), _line_normals(mid, cp.last)))
    else:
        cand = [normals]
    for nl, nr in cand:
        try:
            E = build_enclosure(cp, mid, nl, nr)
            evidence = curve_in_enclosure(cp, E, ENCLOSURE_SAMPLES)
        except (EnclosureError, EvidenceError, DegenerateInputError, ValueError):
            continue
        against = {}
        order = [partner] + [j for j in range(len(pieces)) if j not in (k, partner)]
        for j in order:
            r = enclosure_disjoint(E, hulls[j], shared_endpoints(pieces, k, j))
            if not r.disjoint:
                break
            against[j] = r
        else:
            return EnclosureRepair(k, E, evidence, Point3(*nl), Point3(*nr), dict(sorted(against.items())))
    return None


def _certify_level(cp: ControlPolygon, level: int, repair: bool, enclosure_normals=None):
    scaled, m = scale_for_subdivision(cp, level) if _integral(cp) else (cp, 0)
    forest = subdivide_levels(scaled, level, scale=2 ** m)
    pieces = forest.pieces
    piece_certs = []
    for k, piece in enumerate(pieces):
        axes = monotone_axes(piece)
        if not axes:
            return None, {"level": level, "kind": "not monotone", "piece": k}
        piece_certs.append(PieceCertificate(k, min(axes), convex_hull(piece.points), piece))
    hulls = [pc.hull for pc in piece_certs]
    seps = _separation_matrix(pieces, hulls)
    bad = [ij for ij, r in seps.items() if not r.disjoint]
    repairs: list[EnclosureRepair] = []
    if bad:
        if not repair:
            return None, {"level": level, "kind": "hulls overlap", "pairs": bad,
                          "witness": seps[bad[0]].witness}
        touching = [ij for ij in bad if shared_endpoints(pieces, *ij)]
        if touching:
            return None, {"level": level, "kind": "hulls overlap", "pairs": bad,
                          "witness": seps[touching[0]].witness}
        fixed: set[tuple[int, int]] = set()
        for i, j in bad:
            if (i, j) in fixed:
                continue
            rep = None
            for k, partner in ((j, i), (i, j)):
                rep = _try_enclosure(pieces, hulls, k, partner, enclosure_normals)
                if rep is not None:
                    break
            if rep is None:
                return None, {"level": level, "kind": "hulls overlap, no enclosure", "pairs": bad,
                              "witness": seps[i, j].witness}
            repairs.append(rep)
            for other in rep.against:
                fixed.add((min(rep.piece, other), max(rep.piece, other)))
        if not all(ij in fixed for ij in bad):
            return None, {"level": level, "kind": "hulls overlap", "pairs": bad}
    knot = PLKnot(forest.refinement())
    simple = is_simple(knot)
    if not simple.simple:
        return None, {"level": level, "kind": "refinement not simple", "edges": simple.edge_pair,
                      "witness": simple.witness}
    try:
        diagram = regular_diagram(knot)
    except DegenerateProjectionError as exc:
        return None, {"level": level, "kind": "no regular projection", "detail": str(exc)}
    cert = IsotopyCertificate(cp, level, m, tuple(piece_certs), seps, tuple(repairs), knot, simple,
                              diagram, classify(diagram))
    return cert, None


def _integral(cp: ControlPolygon) -> bool:
    return all(c.denominator == 1 for p in cp.points for c in p)


def _check_closed(cp: ControlPolygon) -> None:
    if not cp.closed:
        raise ValueError("control polygon is not closed (first and last points differ)")


def certify_isotopy(cp: ControlPolygon, max_level: int = DEFAULT_MAX_LEVEL, *, min_level: int = 1,
                    repair: bool = True, enclosure_normals=None) -> IsotopyCertificate:
    """Certify the curve against the PL refinement at the first level that works.

    Enclosure repair of an overlapping hull pair is tried only at ``max_level``,
    so a plain certificate at a finer level is never pre-empted by a repaired
    coarser one.  ``enclosure_normals`` fixes the pair of plane normals instead
    of searching for them.  Integer inputs are scaled by ``2**m`` first so all
    subdivision points stay on the integer lattice.
    """
    _check_closed(cp)
    if max_level < min_level or min_level < 1:
        raise ValueError("need 1 <= min_level <= max_level")
    obstruction: dict = {}
    for level in range(min_level, max_level + 1):
        cert, obstruction = _certify_level(cp, level, repair and level == max_level, enclosure_normals)
        if cert is not None:
            return cert
    raise CertificationError(f"no certificate up to level {max_level}: {obstruction['kind']}", obstruction)


def bezier_knot_type(cp: ControlPolygon, max_level: int = DEFAULT_MAX_LEVEL, **kwargs) -> tuple[KnotClass, IsotopyCertificate]:
    cert = certify_isotopy(cp, max_level, **kwargs)
    return cert.pl_knot_class, cert


def validate_certificate(cert: IsotopyCertificate) -> list[str]:
    """Recheck every recorded fact from scratch; returns discrepancies (empty if sound)."""
    problems: list[str] = []
    scaled = cert.source.scaled(2 ** cert.scale_exponent) if cert.scale_exponent else cert.source
    forest = subdivide_levels(scaled, cert.level)
    if len(forest.pieces) != len(cert.pieces):
        return [f"expected {len(forest.pieces)} pieces, certificate has {len(cert.pieces)}"]
    for pc, piece in zip(cert.pieces, forest.pieces):
        if pc.piece.points != piece.points:
            problems.append(f"piece {pc.index}: control points differ from subdivision")
        if pc.monotone_axis not in monotone_axes(piece):
            problems.append(f"piece {pc.index}: not strictly monotone in {pc.monotone_axis}")
    repaired = {(min(r.piece, j), max(r.piece, j)) for r in cert.enclosures for j in r.against}
    pieces = forest.pieces
    for (i, j), r in cert.separations.items():
        shared = shared_endpoints(pieces, i, j)
        if r.verdict is Verdict.OVERLAPPING:
            if (i, j) not in repaired:
                problems.append(f"pair {i},{j}: overlapping and not repaired")
            continue
        problems.extend(f"pair {i},{j}: {msg}" for msg in
                        check_witness_plane(r, pieces[i].points, pieces[j].points, shared))
    for rep in cert.enclosures:
        cp = pieces[rep.piece]
        try:
            E = build_enclosure(cp, evaluate(cp, HALF), rep.normal_left, rep.normal_right)
            curve_in_enclosure(cp, E, [s for s, _, _ in rep.evidence.samples])
        except (ValueError, EvidenceError) as exc:
            problems.append(f"enclosure on piece {rep.piece}: {exc}")
            continue
        for j in range(len(pieces)):
            if j != rep.piece and not enclosure_disjoint(E, convex_hull(pieces[j].points),
                                                         shared_endpoints(pieces, rep.piece, j)).disjoint:
                problems.append(f"enclosure on piece {rep.piece} meets hull {j}")
    knot = PLKnot(forest.refinement())
    if knot != cert.refinement:
        problems.append("refinement differs from subdivision")
    if not is_simple(knot).simple:
        problems.append("refinement is not simple")
    d = project_diagram(knot, cert.diagram_axis)
    if d != cert.diagram:
        problems.append("diagram differs on reprojection")
    if classify(d) != cert.pl_knot_class:
        problems.append("knot class differs on reclassification")
    return problems


def check_witness_plane(r: SeparationResult, pa, pb, shared) -> list[str]:
    if r.plane is None:
        return ["no witness plane"]
    out = []
    for p in pa:
        s = sign(r.plane.evaluate(p))
        if s > 0 or (s == 0 and p not in shared):
            out.append(f"point {p} of the first hull on the wrong side")
    for p in pb:
        s = sign(r.plane.evaluate(p))
        if s < 0 or (s == 0 and p not in shared):
            out.append(f"point {p} of the second hull on the wrong side")
    return out


# ---------------------------------------------------------------------------
# pushes


class PushError(RuntimeError):
    """A swept triangle meets another edge."""

    def __init__(self, message: str, edge: int, witness: Point3) -> None:
        super().__init__(message)
        self.edge = edge
        self.witness = witness


@dataclass(frozen=True)
class TriangleCheck:
    triangle: int
    edge: int
    contact: str  # "disjoint" or "shared vertex"


@dataclass(frozen=True)
class PushCertificate:
    """Linear motion of one vertex that sweeps two triangles clear of the rest of the polygon."""

    polygon: PLKnot
    vertex: int
    start: Point3
    end: Point3
    triangles: tuple[tuple[Point3, Point3, Point3], tuple[Point3, Point3, Point3]]
    checks: tuple[TriangleCheck, ...]
    final_simple: SimplicityCertificate


def triangle_segment_intersection(tri: Sequence[Point3], seg: Segment3) -> tuple[Point3, ...]:
    """Exact intersection of a closed triangle with a closed segment.

    Returns () if disjoint, one point, or the two ends of a shared sub-segment.
    A degenerate (collinear) triangle is treated as the segment spanning it.
    """
    a, b, c = tri
    n = (b - a).cross(c - a)
    if n.is_zero():
        pts = sorted({a, b, c})
        lo, hi = pts[0], pts[-1]
        if lo == hi:
            return (lo,) if _on_segment(lo, seg) else ()
        return _coplanar_clip((lo, hi), seg, None)
    sp = n.dot(seg.p - a)
    sq = n.dot(seg.q - a)
    if sp and sq and (sp > 0) == (sq > 0):
        return ()
    if sp == 0 and sq == 0:
        return _coplanar_clip((a, b, c), seg, n)
    x = seg.p + (seg.q - seg.p) * (sp / (sp - sq))
    return (x,) if _in_triangle(x, a, b, c, n) else ()


def _on_segment(p: Point3, seg: Segment3) -> bool:
    d = seg.q - seg.p
    w = p - seg.p
    return w.cross(d).is_zero() and 0 <= w.dot(d) <= d.dot(d)


def _in_triangle(x, a, b, c, n) -> bool:
    return ((b - a).cross(x - a).dot(n) >= 0 and (c - b).cross(x - b).dot(n) >= 0
            and (a - c).cross(x - c).dot(n) >= 0)


def _coplanar_clip(tri, seg: Segment3, n) -> tuple[Point3, ...]:
    if n is None:
        # degenerate triangle: clip the segment against the spanning segment
        lo, hi = tri[0], tri[1]
        d = hi - lo
        dd = d.dot(d)
        u = seg.q - seg.p
        if not d.cross(u).is_zero():
            ct = seg3_contact(Segment3(lo, hi), seg)
            return (ct.point,) if ct.point is not None else ()
        t0 = (seg.p - lo).dot(d) / dd
        t1 = (seg.q - lo).dot(d) / dd
        s0, s1 = max(Fraction(0), min(t0, t1)), min(Fraction(1), max(t0, t1))
        if s0 > s1:
            return ()
        return (lo + d * s0,) if s0 == s1 else (lo + d * s0, lo + d * s1)
    a, b, c = tri
    lo, hi = Fraction(0), Fraction(1)
    u = seg.q - seg.p
    for p, q in ((a, b), (b, c), (c, a)):
        inward = n.cross(q - p)
        f0 = inward.dot(seg.p - p)
        df = inward.dot(u)
        # need f0 + t*df >= 0
        if df == 0:
            if f0 < 0:
                return ()
        elif df > 0:
            lo = max(lo, -f0 / df)
        else:
            hi = min(hi, -f0 / df)
        if lo > hi:
            return ()
    if lo == hi:
        return (seg.p + u * lo,)
    return (seg.p + u * lo, seg.p + u * hi)


def certify_push(cp: ControlPolygon | PLKnot, vertex: int, target: Sequence[Fraction]) -> PushCertificate:
    """Check that moving one vertex straight to ``target`` never hits the rest of the polygon."""
    if isinstance(cp, ControlPolygon):
        _check_closed(cp)
        if vertex in (0, len(cp) - 1):
            raise ValueError("the closing control point appears twice; move an interior vertex")
        knot = PLKnot(cp.points)
    else:
        knot = cp
    verts = knot.vertices
    n = len(verts)
    if not 0 <= vertex < n:
        raise ValueError(f"vertex index {vertex} out of range")
    target = target if isinstance(target, Point3) else Point3(*target)
    start = verts[vertex]
    if not is_simple(knot).simple:
        raise DegenerateInputError("polygon is not simple before the push")
    prev, nxt = verts[vertex - 1], verts[(vertex + 1) % n]
    tris = ((prev, start, target), (nxt, start, target))
    checks = []
    for e in range(n):
        if e in (vertex, (vertex - 1) % n):
            continue
        seg = knot.edge(e)
        for t_idx, (tri, pivot) in enumerate(zip(tris, (prev, nxt))):
            hit = triangle_segment_intersection(tri, seg)
            if not hit:
                checks.append(TriangleCheck(t_idx, e, "disjoint"))
                continue
            if all(p == pivot for p in hit) and pivot in (seg.p, seg.q):
                checks.append(TriangleCheck(t_idx, e, "shared vertex"))
                continue
            witness = next(p for p in hit if p != pivot) if any(p != pivot for p in hit) else hit[0]
            raise PushError(f"triangle {t_idx} meets edge {e} at {witness}", e, witness)
    moved = PLKnot(tuple(target if i == vertex else p for i, p in enumerate(verts)))
    final = is_simple(moved)
    if not final.simple:
        raise PushError("polygon after the push is not simple", final.edge_pair[0], final.witness)
    return PushCertificate(knot, vertex, start, target, tris, tuple(checks), final)
