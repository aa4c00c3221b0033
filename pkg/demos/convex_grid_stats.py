"""Diagonal-line multiplicities and difference statistics on convex grids.

Run: python demos/convex_grid_stats.py
"""

from unitarea.constructions import ConvexSet, convex_grid, squares
from unitarea.counting import count_brute_force
from unitarea.gridstats import (
    MultiplicityTable,
    delta_histogram,
    rich_point_census,
    rich_poor_partition,
    tail_slope,
)

sq = squares(16)
table = MultiplicityTable(sq)
print(f"squares 1..256: {len(table)} diagonal lines cover {table.point_count()} points of A^3")
for k in (1, 2, 4, 8):
    census = rich_point_census(sq, k, table)
    print(f"   points with multiplicity >= {k}: {census.count}")
print("   dyadic histogram:", rich_point_census(sq, 1, table).histogram)

hist = delta_histogram(sq, sq)
print(f"differences: {len(hist.counts)} distinct, tail curve {hist.tail_curve((1, 2, 4, 8))}")
print(f"tail slope: {tail_slope(hist, (1, 2, 4)):.3f}")

# squares give no unit triangles at all; triangular numbers do
tri = ConvexSet([i * (i + 1) // 2 for i in range(1, 13)])
total = count_brute_force(convex_grid(tri, tri)).total
print(f"\ntriangular numbers grid: {total} unit triangles")
for k in (1, 2):
    print(f"   k={k}:", rich_poor_partition(tri, tri, k).as_dict())
