from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from unitarea.constructions import (
    convex_grid,
    general_position,
    one_parallel_pair,
    random_point_set,
    three_parallel,
)
from unitarea.counting import (
    InvariantError,
    LineLookup,
    TriangleCount,
    count_brute_force,
    count_line_bucket,
    incidence_stats,
    spanned_lines,
    unit_triangles,
)
from unitarea.geom2d import CanonicalLine, PointSet, apply_affine

from oracles import naive_rational_count, naive_restricted_count

SQUARE = PointSet([(0, 0), (1, 0), (0, 2), (1, 2)])


def grid(m):
    return PointSet([(x, y) for x in range(m) for y in range(m)])


@pytest.mark.parametrize("counter", [count_brute_force, count_line_bucket])
def test_small_examples(counter):
    assert counter(SQUARE).total == 4
    assert counter(PointSet([(i, 0) for i in range(1, 11)])).total == 0
    assert counter(PointSet([(0, 0), (1, 0)])).total == 0


def test_exact_kernel_agrees():
    s = random_point_set(25, seed=11, coord_bound=4)
    assert count_brute_force(s, kernel="exact").total == count_brute_force(s).total


def test_three_parallel_small():
    s = three_parallel(2, 2)
    assert len(s) == 7
    b, k = count_brute_force(s), count_line_bucket(s)
    assert (b.total, b.restricted) == (k.total, k.restricted)
    assert b.restricted >= 4
    assert b.total == naive_rational_count([(p.x, p.y) for p in s])


def test_restricted_matches_naive_loop():
    s = one_parallel_pair(4)
    parts = [[(p.x, p.y) for p in s.part(k)] for k in (1, 2, 3)]
    assert count_brute_force(s).restricted == naive_restricted_count(*parts)
    assert count_line_bucket(s).restricted == naive_restricted_count(*parts)


def test_quadratic_field_counts_agree():
    s = general_position(4, 2)
    b = count_brute_force(s)
    assert (b.total, b.restricted) == (count_brute_force(s, kernel="exact").total, 12)
    assert count_line_bucket(s).total == b.total


def test_restricted_cannot_exceed_total():
    with pytest.raises(InvariantError):
        TriangleCount(total=1, restricted=2)


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.integers(3, 18), st.integers(2, 6))
def test_bucket_equals_brute_force(seed, n, bound):
    s = random_point_set(n, seed, coord_bound=bound)
    assert count_line_bucket(s).total == count_brute_force(s).total


@pytest.mark.parametrize("threads", [2, 3, 7])
def test_thread_count_does_not_change_results(threads):
    s = three_parallel(6, Fraction(1, 3))
    ref_b, ref_k = count_brute_force(s), count_line_bucket(s)
    b, k = count_brute_force(s, threads=threads), count_line_bucket(s, threads=threads)
    assert (b.total, b.restricted) == (ref_b.total, ref_b.restricted)
    assert (k.total, k.restricted) == (ref_k.total, ref_k.restricted)


def test_invariant_under_unimodular_map():
    s = grid(4)
    m = ((Fraction(2), Fraction(1)), (Fraction(3), Fraction(2)))
    moved = s.map(lambda p: apply_affine(m, (Fraction(1, 3), Fraction(-5, 7)), p))
    assert count_brute_force(moved).total == count_brute_force(s).total
    assert count_line_bucket(moved).total == count_line_bucket(s).total


def test_random_sets_rarely_have_unit_triangles():
    for seed in range(20):
        assert count_line_bucket(random_point_set(20, seed)).total == 0


def test_unit_triangles_enumeration():
    tris = unit_triangles(SQUARE)
    assert tris == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    g = convex_grid([0, 1, 3, 6, 10], [0, 1, 3, 6])
    assert len(unit_triangles(g)) == count_brute_force(g).total


def test_line_lookup_probe_for_unspanned_lines():
    s = grid(3)
    look = LineLookup(s)
    # x + y = 1/2 misses every grid point; x - y = 2 meets only (2, 0)
    assert look.points_on(CanonicalLine.through_coefficients(1, 1, Fraction(1, 2))) == []
    hit = look.points_on(CanonicalLine.through_coefficients(1, -1, 2))
    assert [s[i] for i in hit] == [s[6]]


def test_incidence_stats_grid():
    st3 = incidence_stats(grid(3))
    assert st3.n_lines == 20
    assert st3.at_least[3] == 8
    assert st3.at_least[2] == 20


def test_incidence_stats_general_position():
    s = PointSet([(i, i * i) for i in range(5)])
    stats = incidence_stats(s)
    assert stats.n_lines == 10
    assert set(stats.line_counts.values()) == {2}


def test_incidence_curve_non_increasing():
    stats = incidence_stats(grid(5))
    vals = [stats.at_least[j] for j in sorted(stats.at_least)]
    assert vals == sorted(vals, reverse=True)


def test_incidence_needs_two_points():
    with pytest.raises(ValueError):
        incidence_stats(PointSet([(0, 0)]))


def test_spanned_lines_partition_pairs():
    s = grid(4)
    lines = spanned_lines(s)
    assert sum(len(v) * (len(v) - 1) // 2 for v in lines.values()) == 16 * 15 // 2
