from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from unitarea.geom2d import (
    CanonicalLine,
    DegeneratePairError,
    DuplicatePointError,
    Point2,
    PointSet,
    apply_affine,
    canonical_line_through,
    collinear,
    signed_double_area,
    unit_locus_line,
)
from unitarea.scalar import sqrt

from conftest import rationals
from oracles import sympy_double_area

points = st.builds(Point2, rationals(), rationals())


def test_double_area_examples():
    o, e1, e2 = Point2(0, 0), Point2(1, 0), Point2(0, 2)
    assert signed_double_area(o, e1, e2) == 2
    assert signed_double_area(o, e2, e1) == -2
    assert signed_double_area(o, Point2(1, 1), Point2(2, 2)) == 0


def test_unit_locus_examples():
    assert unit_locus_line(Point2(0, 0), Point2(1, 0)) == CanonicalLine.through_coefficients(0, 1, 2)
    assert unit_locus_line(Point2(0, 0), Point2(0, 1)) == CanonicalLine.through_coefficients(1, 0, -2)
    with pytest.raises(DegeneratePairError):
        unit_locus_line(Point2(1, 1), Point2(1, 1))


def test_canonical_line_examples():
    line = canonical_line_through(Point2(0, 0), Point2(2, 4))
    assert (line.a, line.b, line.c) == (1, Fraction(-1, 2), 0)
    assert canonical_line_through(Point2(0, 2), Point2(5, 2)) == canonical_line_through(
        Point2(1, 2), Point2(3, 2)
    )
    with pytest.raises(DegeneratePairError):
        canonical_line_through(Point2(1, 1), Point2(1, 1))


def test_zero_normal_rejected():
    with pytest.raises(ValueError):
        CanonicalLine.through_coefficients(0, 0, 1)


def test_point_set_rejects_duplicates_and_bad_parts():
    with pytest.raises(DuplicatePointError):
        PointSet([(0, 0), (1, 1), (0, 0)])
    with pytest.raises(ValueError):
        PointSet([(0, 0)], parts=[4])
    s = PointSet.from_parts([(0, 0)], [(1, 0)], [(0, 1), (1, 1)])
    assert s.parts == (1, 2, 3, 3)
    assert s.part(3) == [Point2(0, 1), Point2(1, 1)]


def test_quadratic_coordinates():
    r = sqrt(3)
    p, q = Point2(0, 0), Point2(1 + r, 0)
    line = unit_locus_line(p, q)
    assert line.contains(Point2(7, 2 / (1 + r)))
    assert signed_double_area(p, q, Point2(5, 2 / (1 + r))) == 2


@given(points, points, points)
def test_alternating(p, q, r):
    a = signed_double_area(p, q, r)
    assert signed_double_area(q, p, r) == -a
    assert signed_double_area(p, r, q) == -a
    assert signed_double_area(r, q, p) == -a


@given(points, points, points)
def test_matches_sympy_determinant(p, q, r):
    assert sympy_double_area(p, q, r) == signed_double_area(p, q, r)


unimodular = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).filter(
    lambda t: t[0] != 0
)


@given(points, points, points, unimodular, rationals(), rationals())
def test_invariant_under_unimodular_affine_maps(p, q, r, abc, tx, ty):
    a, b, c = abc
    # [[a, b], [c, (1 + b*c)/a]] has determinant 1
    m = ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(1 + b * c, a)))
    img = [apply_affine(m, (tx, ty), v) for v in (p, q, r)]
    assert signed_double_area(*img) == signed_double_area(p, q, r)


@given(points, points, st.lists(rationals(200, 30), min_size=1, max_size=100))
def test_points_on_unit_locus_have_area_two(p, q, params):
    assume(p != q)
    line = unit_locus_line(p, q)
    for t in params:
        if line.b:
            r = Point2(t, (line.c - line.a * t) / line.b)
        else:
            r = Point2(line.c / line.a, t)
        assert signed_double_area(p, q, r) == 2


@given(points, points)
def test_line_through_is_symmetric(p, q):
    assume(p != q)
    assert canonical_line_through(p, q) == canonical_line_through(q, p)
    assert canonical_line_through(p, q).contains(p)


def test_collinear():
    assert collinear(Point2(0, 0), Point2(1, 1), Point2(3, 3), Point2(-2, -2))
    assert not collinear(Point2(0, 0), Point2(1, 1), Point2(3, 4))
