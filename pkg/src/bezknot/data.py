"""The two closed degree-6 control polygons studied throughout the package.

``K1`` is ``K0`` with one vertex (index ``PUSH_VERTEX``) moved to ``PUSH_TARGET``.
"""

from __future__ import annotations

from .bezier import ControlPolygon
from .kernel import Point3

K0 = ControlPolygon.of([
    (0, 9, 20), (-15, -95, -50), (40, 80, -20), (-10, -60, 58),
    (-60, 30, 20), (40, -60, -60), (0, 9, 20),
])

PUSH_VERTEX = 3
PUSH_TARGET = Point3(10, -60, 58)

K1 = K0.with_point(PUSH_VERTEX, PUSH_TARGET)

CURVES = {"K0": K0, "K1": K1}
