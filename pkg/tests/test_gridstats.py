from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from unitarea.constructions import ConvexityError, convex_grid
from unitarea.counting import count_brute_force
from unitarea.geom2d import Point2, signed_double_area
from unitarea.gridstats import (
    MultiplicityTable,
    delta_histogram,
    dyadic_histogram,
    plane_of,
    rich_point_census,
    rich_poor_partition,
    shift_multiplicity,
    tail_slope,
)

from conftest import rationals
from oracles import triple_shift_count

F = Fraction
TRIANGULAR = [i * (i + 1) // 2 for i in range(9)]
SQUARES4 = [1, 4, 9, 16]


def test_plane_examples():
    p = plane_of((1, 2, 3))
    assert p.coefficients == (1, -2, 1)
    assert str(p) == "x - 2*y + z = 2"
    assert plane_of((2, 3, 4)) == p
    with pytest.raises(ValueError):
        plane_of((1, 1, 1))


@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_plane_encodes_negative_unit_triangles(v):
    a, b, c, x, y, z = v
    if x == y == z:
        return
    area = signed_double_area(Point2(a, x), Point2(b, y), Point2(c, z))
    assert plane_of((x, y, z)).contains((a, b, c)) == (area == -2)


@given(st.tuples(rationals(), rationals(), rationals()), st.tuples(rationals(), rationals(), rationals()))
def test_plane_equality_iff_diagonal_shift(p, q):
    if p[0] == p[1] == p[2] or q[0] == q[1] == q[2]:
        return
    shifted = q[0] - p[0] == q[1] - p[1] == q[2] - p[2]
    assert (plane_of(p) == plane_of(q)) == shifted


@given(st.tuples(rationals(), rationals(), rationals()), rationals())
def test_plane_is_shift_invariant(p, t):
    if p[0] == p[1] == p[2]:
        return
    assert plane_of(p) == plane_of(tuple(v + t for v in p))


def test_shift_multiplicity_examples():
    assert shift_multiplicity((1, 2, 3), {1, 2, 3, 4}) == 2
    assert shift_multiplicity((1, 2, 4), {1, 2, 4}) == 1
    with pytest.raises(ValueError):
        shift_multiplicity((1, 2, 5), {1, 2, 4})


def test_table_matches_direct_multiplicities():
    a = TRIANGULAR
    table = MultiplicityTable(a)
    aset = set(a)
    for p in product(a, repeat=3):
        w = shift_multiplicity(p, a)
        assert w >= 1
        assert table.w(p) == w == triple_shift_count(p, aset)
    assert table.point_count() == len(a) ** 3


def test_table_representatives_are_lowest_members():
    table = MultiplicityTable([1, 2, 3])
    assert table.multiplicities[(1, 1, 1)] == 3
    assert table.multiplicities[(1, 2, 3)] == 1
    assert table.multiplicities[(1, 2, 2)] == 2


def test_census_small():
    count, hist = rich_point_census([1, 2, 3], 2)
    # w(1,1,1) = 3; triples with pairwise gaps in {0, 1} and spread 1 have w = 2
    assert count == 15
    assert hist == {1: 12, 2: 15}
    assert sum(hist.values()) == 27


def test_census_arithmetic_progression_diagonal():
    m = 7
    table = MultiplicityTable(range(1, m + 1))
    assert table.w((1, 1, 1)) == m


def test_census_squares_golden():
    assert rich_point_census(SQUARES4, 2) == (4, {1: 60, 3: 4})


def test_census_monotone_in_k():
    counts = [rich_point_census(TRIANGULAR, k).count for k in range(1, 11)]
    assert counts == sorted(counts, reverse=True)
    assert counts[0] == len(TRIANGULAR) ** 3


def test_dyadic_buckets():
    assert dyadic_histogram({1: 5, 2: 3, 3: 6, 4: 8, 7: 7, 8: 1}) == {1: 5, 2: 9, 3: 15, 4: 1}


def test_delta_examples():
    d = delta_histogram({1, 2, 4}, {1, 2, 4})
    assert d[0] == 3
    assert all(d[s] == 1 for s in (1, -1, 2, -2, 3, -3))
    assert d.total == 9
    assert d.at_least(3) == 1 and d.at_least(1) == 7
    assert delta_histogram({5}, {5}).counts == {0: 1}
    with pytest.raises(ValueError):
        delta_histogram(set(), {1})


@given(st.sets(rationals(30, 4), min_size=1, max_size=12), st.sets(rationals(30, 4), min_size=1, max_size=12))
def test_delta_identities(x, y):
    d = delta_histogram(x, y)
    assert d.total == len(x) * len(y)
    dd = delta_histogram(x, x)
    assert all(dd[-s] == c for s, c in dd.counts.items())
    curve = [d.at_least(t) for t in range(1, 8)]
    assert curve == sorted(curve, reverse=True)


def test_tail_slope_reported_for_convex_set():
    a = [i * i for i in range(1, 41)]
    d = delta_histogram(a, a)
    curve = d.tail_curve((2, 4, 8, 16))
    assert list(curve.values()) == sorted(curve.values(), reverse=True)
    slope = tail_slope(d)
    assert slope < 0


@pytest.mark.parametrize("k", [1, 2, 3, 4, 100])
def test_partition_is_complete(k):
    a, b = TRIANGULAR[:7], [0, 1, 3, 6, 10, 15]
    part = rich_poor_partition(a, b, k)
    assert part.total == count_brute_force(convex_grid(a, b)).total
    if k == 1:
        assert part.rich_rich == part.total
    if k == 100:
        assert part.poor_poor == part.total


def test_partition_on_squares():
    part = rich_poor_partition(SQUARES4, SQUARES4, 2)
    assert part.total == count_brute_force(convex_grid(SQUARES4, SQUARES4)).total


def test_partition_rejects_non_convex():
    with pytest.raises(ConvexityError):
        rich_poor_partition([1, 2, 3], [1, 4, 9], 2)
