"""Exact knot-type certification for closed Bezier curves."""

from ._accel import COMPILED, kernels
from .bezier import (
    ControlPolygon, SubdivisionForest, decasteljau_split, evaluate, hodograph, monotone_axes,
    scale_for_subdivision, scaling_exponent, subdivide_levels,
)
from .certify import (
    CertificationError, IsotopyCertificate, PushCertificate, PushError, bezier_knot_type, certify_isotopy,
    certify_push, validate_certificate,
)
from .homotopy import TransitionInterval, VertexHomotopy, bisect_transition, polygon_at
from .hulls import (
    ConvexHull3, Enclosure, SeparationResult, Verdict, build_enclosure, convex_hull, curve_in_enclosure,
    enclosure_disjoint, plane_polyline_intersections, separate,
)
from .kernel import Axis, DegenerateInputError, Plane, Point2, Point3, Segment2, Segment3, parse_rational
from .topology import (
    GaussCode, KnotClass, KnotDiagram, KnotType, PLKnot, classify, gauss_code, is_simple, kauffman_jones,
    project_diagram, reduce_gauss,
)

__version__ = "0.1.0"
BACKEND = kernels.BACKEND

__all__ = [name for name in dir() if not name.startswith("_")]
