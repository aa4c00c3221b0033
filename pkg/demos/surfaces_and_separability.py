"""Surfaces of pairs sharing a unit locus line, and the product form of the vertex function.

Run: python demos/surfaces_and_separability.py
"""

from itertools import combinations

from unitarea.constructions import random_point_set
from unitarea.geom2d import Point2, unit_locus_line
from unitarea.scalar import format_scalar
from unitarea.surfaces4d import (
    SigmaSurface,
    matrix_determinant,
    pair_intersection_audit,
    sigma_map,
)
from unitarea.symbolic import decompose_f, partial_derivative, separability_test, vertex_function

p, q = Point2(0, 0), Point2(3, 1)
surface = SigmaSurface(p, q)
print("matrix of the map for p=(0,0), q=(3,1):")
for row in surface.matrix:
    print("   ", [format_scalar(v) for v in row])
print("determinant:", format_scalar(matrix_determinant(surface.matrix)))

u = Point2(1, 2)
v = sigma_map(surface, u)
print(f"u={u} maps to v={v}; same locus line: {unit_locus_line(p, u) == unit_locus_line(q, v)}")

pts = random_point_set(10, seed=5, coord_bound=6, distinct_coordinates=True).points
surfaces = [SigmaSurface(a, b) for a in pts for b in pts if a != b]
worst = max(pair_intersection_audit(s, t, pts)[0] for s, t in combinations(surfaces, 2))
print(f"\n{len(surfaces)} surfaces on a random 10-point set; largest pairwise overlap: {worst}")

print()
for alpha in (0, 1, 2):
    f = vertex_function(alpha)
    ratio = partial_derivative(f, "x") / partial_derivative(f, "y")
    d = decompose_f(alpha)
    print(f"alpha={alpha}: f = {f}")
    print(f"   separable derivative ratio: {separability_test(ratio)}")
    for key, text in d.report().items():
        if key in ("phi", "psi", "h"):
            print(f"   {key} = {text}")
