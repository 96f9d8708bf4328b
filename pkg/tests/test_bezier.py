import random
from fractions import Fraction

import pytest

from bezknot.bezier import (
    HALF, ControlPolygon, decasteljau_split, evaluate, hodograph, monotone_axes, scale_for_subdivision,
    scaling_exponent, subdivide_levels,
)
from bezknot.data import K0, K1
from bezknot.io import parse_forest
from bezknot.kernel import Axis, Point3
from conftest import FIXTURES
from oracles import bernstein_point, bernstein_subpolygon


def test_control_polygon_validation():
    with pytest.raises(ValueError):
        ControlPolygon.of([(0, 0, 0)])
    cp = ControlPolygon.of([(0, 0, 0), (1, 2, 3), (0, 0, 0)])
    assert cp.degree == 2 and cp.closed


def test_evaluate_matches_bernstein_sum():
    rng = random.Random(1)
    for cp in (K0, K1):
        for _ in range(50):
            t = Fraction(rng.randint(0, 1000), 1000)
            assert evaluate(cp, t) == Point3(*bernstein_point(cp.points, t))


def test_split_matches_blossom():
    for t in (Fraction(1, 3), HALF, Fraction(7, 9)):
        left, right = decasteljau_split(K1, t)
        assert list(left.points) == [Point3(*p) for p in bernstein_subpolygon(K1.points, 0, t)]
        assert list(right.points) == [Point3(*p) for p in bernstein_subpolygon(K1.points, t, 1)]


def test_forest_pieces_match_blossom_intervals():
    forest = subdivide_levels(K0, 3)
    assert len(forest.pieces) == 8
    for k, piece in enumerate(forest.pieces):
        lo, hi = Fraction(k, 8), Fraction(k + 1, 8)
        assert list(piece.points) == [Point3(*p) for p in bernstein_subpolygon(K0.points, lo, hi)]


def test_scaling_exponent_and_integrality():
    assert scaling_exponent(6, 4) == 29
    scaled, m = scale_for_subdivision(K1, 4)
    assert m == 29
    assert scaled.points[0] == Point3(0, 4831838208, 10737418240)
    for piece in subdivide_levels(scaled, 4).pieces:
        assert all(c.denominator == 1 for p in piece.points for c in p)
    with pytest.raises(ValueError):
        scale_for_subdivision(ControlPolygon.of([(0, 0, 0), ("1/2", 0, 0)]), 1)


@pytest.mark.parametrize("level, name", [(1, "table4_K1_level1.txt"), (2, "table4_K1_level2.txt"),
                                         (3, "table3_K1_level3.txt")])
def test_published_tables(scaled_curves, level, name):
    expected = parse_forest((FIXTURES / name).read_text())
    got = [list(p.points) for p in subdivide_levels(scaled_curves["K1"], level).pieces]
    assert got == expected


def test_level1_point(scaled_curves):
    left, _ = subdivide_levels(scaled_curves["K1"], 1).pieces
    assert left.points[1] == Point3(-4026531840, -23085449216, -8053063680)


def test_midpoint_of_piece_seven(scaled_curves):
    piece = subdivide_levels(scaled_curves["K1"], 3).pieces[7]
    mid = evaluate(piece, HALF)
    assert mid == Point3(4399876800, -4859733312, -849023360)
    # same point as the whole curve at t = 15/16
    assert mid == evaluate(scaled_curves["K1"], Fraction(15, 16))


def test_hodograph_and_monotone_axes():
    cp = ControlPolygon.of([(0, 0, 0), (1, 2, 0), (3, 1, 0)])
    assert list(hodograph(cp).points) == [Point3(2, 4, 0), Point3(4, -2, 0)]
    assert monotone_axes(cp) == {Axis.X}
    line = ControlPolygon.of([(0, 0, 0), (1, 0, 0)])
    assert len(hodograph(line).points) == 1


def test_level4_pieces_all_monotone(level4):
    for forest in level4.values():
        assert all(monotone_axes(p) for p in forest.pieces)


def test_refinement_and_breakpoints(level4):
    forest = level4["K0"]
    assert len(forest.refinement()) == 16 * 6
    bps = forest.breakpoints()
    assert len(bps) == 16
    assert bps[5] == evaluate(K0.scaled(2 ** 29), Fraction(5, 16))
