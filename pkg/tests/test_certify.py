import pytest

from bezknot.bezier import ControlPolygon
from bezknot.certify import (
    CertificationError, PushError, bezier_knot_type, certify_isotopy, certify_push,
    triangle_segment_intersection, validate_certificate,
)
from bezknot.data import K0, K1, PUSH_TARGET, PUSH_VERTEX
from bezknot.hulls import Verdict
from bezknot.kernel import Axis, Point3, Segment3
from bezknot.topology import KnotType, PLKnot


@pytest.fixture(scope="module")
def k0_cert():
    return certify_isotopy(K0, 4)


@pytest.fixture(scope="module")
def k1_cert():
    return certify_isotopy(K1, 4)


def test_k0_is_unknot(k0_cert):
    assert k0_cert.pl_knot_class.kind is KnotType.UNKNOT
    assert k0_cert.level == 3
    assert not k0_cert.enclosures
    assert validate_certificate(k0_cert) == []


def test_k1_is_right_trefoil(k1_cert):
    assert k1_cert.pl_knot_class.kind is KnotType.TREFOIL_RIGHT
    assert k1_cert.level == 4
    assert k1_cert.scale_exponent == 29
    assert k1_cert.diagram_axis is Axis.Z
    assert k1_cert.diagram.writhe == 3
    assert all(r.disjoint for r in k1_cert.separations.values())
    assert validate_certificate(k1_cert) == []


def test_min_level_forces_finer_certificate():
    cert = certify_isotopy(K0, 4, min_level=4)
    assert cert.level == 4 and len(cert.pieces) == 16
    assert cert.pl_knot_class.kind is KnotType.UNKNOT


def test_k1_level3_needs_one_enclosure():
    cert = certify_isotopy(K1, 3)
    assert cert.level == 3
    (rep,) = cert.enclosures
    assert rep.piece in (3, 7)
    assert cert.separations[3, 7].verdict is Verdict.OVERLAPPING
    assert rep.evidence.left_count == rep.evidence.right_count == 2
    assert validate_certificate(cert) == []
    with pytest.raises(CertificationError) as exc:
        certify_isotopy(K1, 3, repair=False)
    assert exc.value.obstruction["pairs"] == [(3, 7)]


def test_tampered_certificate_is_caught(k1_cert):
    bad = k1_cert.__class__(**{**k1_cert.__dict__, "level": 3})
    assert validate_certificate(bad)


def test_non_monotone_piece_blocks_level():
    # a single wiggle: level 1 pieces are not monotone in any coordinate
    cp = ControlPolygon.of([(0, 0, 0), (8, 8, 8), (-8, 8, -8), (8, -8, 8), (0, 0, 0)])
    with pytest.raises(CertificationError):
        certify_isotopy(cp, 1)


def test_open_polygon_rejected():
    with pytest.raises(ValueError):
        certify_isotopy(ControlPolygon.of([(0, 0, 0), (1, 0, 0), (0, 1, 0)]), 2)


def test_bezier_knot_type_pair():
    cls, cert = bezier_knot_type(K0, 3)
    assert cls.family == "Unknot" and cert.level == 3


def test_push_k0_bold_vertex():
    assert K0.points[PUSH_VERTEX] == Point3(-10, -60, 58)
    cert = certify_push(K0, PUSH_VERTEX, PUSH_TARGET)
    assert cert.end == Point3(10, -60, 58)
    assert cert.final_simple.simple
    assert {c.contact for c in cert.checks} <= {"disjoint", "shared vertex"}
    back = certify_push(K1, PUSH_VERTEX, Point3(-10, -60, 58))
    assert back.start == PUSH_TARGET


def test_push_blocked_by_piercing_edge():
    # the vertical edge 3 pierces the triangle swept by edge 0
    k = PLKnot([(0, 0, 0), (2, -2, 0), (4, 0, 0), (1, 0, 5), (1, 0, -5)])
    with pytest.raises(PushError) as exc:
        certify_push(k, 1, (2, 2, 0))
    assert exc.value.edge == 3
    assert exc.value.witness == Point3(1, 0, 0)


def test_push_rejects_closing_index():
    with pytest.raises(ValueError):
        certify_push(K0, 0, (0, 0, 0))


def test_triangle_segment_intersection():
    tri = (Point3(0, 0, 0), Point3(4, 0, 0), Point3(0, 4, 0))
    assert triangle_segment_intersection(tri, Segment3(Point3(1, 1, -1), Point3(1, 1, 1))) == (Point3(1, 1, 0),)
    assert triangle_segment_intersection(tri, Segment3(Point3(5, 5, -1), Point3(5, 5, 1))) == ()
    coplanar = triangle_segment_intersection(tri, Segment3(Point3(-1, 1, 0), Point3(5, 1, 0)))
    assert set(coplanar) == {Point3(0, 1, 0), Point3(3, 1, 0)}


def test_class_agrees_across_levels():
    # a coarse and a fine certificate agree on the class
    low = certify_isotopy(K0, 3).pl_knot_class
    high = certify_isotopy(K0, 5, min_level=5).pl_knot_class
    assert low == high
