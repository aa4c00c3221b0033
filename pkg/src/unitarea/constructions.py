"""Extremal point configurations.

The three-line constructions place ``S1, S2, S3`` on three lines so that
``S1 x S2 x S3`` spans quadratically many unit-area triangles, one recipe per
parallelism class.  :func:`build_on_lines` handles an arbitrary line triple by
moving it into the canonical frame of its class with an area-preserving affine
map, building there, and mapping back.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .geom2d import CanonicalLine, Point2, PointSet, apply_affine, signed_double_area
from .scalar import Scalar, as_scalar, sqrt, tower_of

__all__ = [
    "LineTriple",
    "NormalizationResult",
    "ConvexSet",
    "ConvexityError",
    "DuplicateLinesError",
    "three_parallel",
    "one_parallel_pair",
    "general_position",
    "general_position_roots",
    "normalize_lines",
    "build_on_lines",
    "lattice_section",
    "mode_area_count",
    "convex_grid",
    "random_point_set",
    "squares",
]


class ConvexityError(ValueError):
    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


class DuplicateLinesError(ValueError):
    pass


# ---------------------------------------------------------------------------
# canonical constructions


def three_parallel(n: int, alpha) -> PointSet:
    """Lines y=0, y=1, y=alpha with ``(1-alpha)x_i + alpha*y_j - z_ij = 2``."""
    alpha = as_scalar(alpha)
    if n < 1:
        raise ValueError("n must be positive")
    if alpha == 0 or alpha == 1:
        raise ValueError("alpha must differ from 0 and 1 so the lines are distinct")
    s1 = [(Fraction(i) / (1 - alpha), 0) for i in range(1, n + 1)]
    s2 = [(Fraction(j) / alpha, 1) for j in range(1, n + 1)]
    s3 = [(Fraction(m), alpha) for m in range(0, 2 * n - 1)]
    return PointSet.from_parts(s1, s2, s3)


def one_parallel_pair(n: int) -> PointSet:
    """Lines y=0, y=1, x=0 with ``x_i = 2^i + 2`` and ``z_ij = 1/(1 - 2^(j-i))``."""
    if n < 2:
        raise ValueError("n must be at least 2 (the diagonal i == j is excluded)")
    s1 = [(2**i + 2, 0) for i in range(1, n + 1)]
    s2 = [(2**j + 2, 1) for j in range(1, n + 1)]
    zs = {1 / (1 - Fraction(2) ** (j - i))
          for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
    s3 = [(0, z) for z in sorted(zs)]
    return PointSet.from_parts(s1, s2, s3)


def general_position_roots(alpha) -> tuple[Scalar, Scalar]:
    """Roots ``(s1, s2)`` of ``s^2 - alpha*s - 2``, ``s1`` the larger one."""
    alpha = as_scalar(alpha)
    root = sqrt(alpha * alpha + 8, tower_of(alpha))
    return (alpha + root) / 2, (alpha - root) / 2


def general_position(n: int, alpha) -> PointSet:
    """Lines y=0, x=0, x+y=alpha; points come from the product form of ``f``.

    ``x_i = y_i = (2^i s1 - s2)/(2^i - 1)`` and ``z_ij = f(x_i, y_j)`` for
    ``i != j`` where ``f(x, y) = (xy - alpha*x - 2)/(y - x)``.
    """
    if n < 2:
        raise ValueError("n must be at least 2 (the diagonal i == j is excluded)")
    alpha = as_scalar(alpha)
    s1, s2 = general_position_roots(alpha)
    xs = [(2**i * s1 - s2) / (2**i - 1) for i in range(1, n + 1)]
    zs = []
    seen = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            u = Fraction(2) ** (i - j)
            z = (s2 - s1 * u) / (1 - u)
            if z not in seen:
                seen.add(z)
                zs.append(z)
    return PointSet.from_parts(
        [(x, 0) for x in xs],
        [(0, y) for y in xs],
        [(z, alpha - z) for z in zs],
    )


# ---------------------------------------------------------------------------
# normalisation of arbitrary line triples


@dataclass(frozen=True)
class LineTriple:
    l1: CanonicalLine
    l2: CanonicalLine
    l3: CanonicalLine

    def __post_init__(self):
        if self.l1 == self.l2 or self.l1 == self.l3 or self.l2 == self.l3:
            raise DuplicateLinesError("the three lines must be pairwise distinct")

    @classmethod
    def from_coefficients(cls, *triples) -> "LineTriple":
        return cls(*(CanonicalLine.through_coefficients(*t) for t in triples))

    def __iter__(self):
        return iter((self.l1, self.l2, self.l3))

    def __getitem__(self, i):
        return (self.l1, self.l2, self.l3)[i]


def _mat_inverse(m):
    (a, b), (c, d) = m
    det = a * d - b * c
    return ((d / det, -b / det), (-c / det, a / det))


@dataclass(frozen=True)
class NormalizationResult:
    """Affine map ``P -> matrix @ P + offset`` with ``|det| = 1``.

    ``order[k]`` is the input index of the line sent to canonical line ``k``.
    ``alpha`` is ``None`` in the one-parallel-pair case, whose frame has no
    free parameter.
    """

    case: str
    alpha: Optional[Scalar]
    matrix: tuple
    offset: tuple
    order: tuple = (0, 1, 2)

    @property
    def determinant(self) -> Scalar:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    @property
    def inverse_matrix(self):
        return _mat_inverse(self.matrix)

    @property
    def inverse_offset(self):
        (a, b), (c, d) = self.inverse_matrix
        ox, oy = self.offset
        return (-(a * ox + b * oy), -(c * ox + d * oy))

    def forward(self, p: Point2) -> Point2:
        return apply_affine(self.matrix, self.offset, p)

    def inverse(self, p: Point2) -> Point2:
        return apply_affine(self.inverse_matrix, self.inverse_offset, p)

    def map_line(self, line: CanonicalLine) -> CanonicalLine:
        """Image of ``line`` under :meth:`forward`."""
        # a.x + b.y = c with P = Minv (P' - t)  ->  (n^T Minv) P' = c + n^T Minv t
        (i00, i01), (i10, i11) = self.inverse_matrix
        na = line.a * i00 + line.b * i10
        nb = line.a * i01 + line.b * i11
        tx, ty = self.offset
        return CanonicalLine.through_coefficients(na, nb, line.c + na * tx + nb * ty)

    def canonical_lines(self) -> tuple[CanonicalLine, CanonicalLine, CanonicalLine]:
        one, zero = Fraction(1), Fraction(0)
        mk = CanonicalLine.through_coefficients
        if self.case == "all_parallel":
            return mk(zero, one, zero), mk(zero, one, one), mk(zero, one, self.alpha)
        if self.case == "one_pair":
            return mk(zero, one, zero), mk(zero, one, one), mk(one, zero, zero)
        return mk(zero, one, zero), mk(one, zero, zero), mk(one, one, self.alpha)


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def normalize_lines(t: LineTriple) -> NormalizationResult:
    """Area-preserving affine map from ``t`` to the canonical frame of its case.

    Frames: all parallel -> y=0, y=1, y=alpha; one parallel pair -> y=0, y=1,
    x=0 (lines re-indexed so the pair comes first); none parallel -> y=0, x=0,
    x+y=alpha.  Only the last case can require a square root, through the
    diagonal rescaling that makes the third normal proportional to (1, 1).
    """
    lines = list(t)
    normals = [(ln.a, ln.b) for ln in lines]
    par = [(i, j) for i, j in combinations(range(3), 2) if lines[i].is_parallel(lines[j])]
    zero = Fraction(0)

    def rows_for_pair(i, j):
        # y' = (n.P - c_i) / (c_j - c_i)
        n = normals[i]
        delta = lines[j].c - lines[i].c
        return (n[0] / delta, n[1] / delta), -lines[i].c / delta, delta, n

    if len(par) == 3:
        row_y, off_y, delta, n = rows_for_pair(0, 1)
        row_x = (delta / n[1], zero) if n[1] else (zero, -delta)
        alpha = (lines[2].c - lines[0].c) / delta
        return NormalizationResult(
            "all_parallel", alpha, (row_x, row_y), (zero, off_y), (0, 1, 2)
        )

    if len(par) == 1:
        i, j = par[0]
        k = 3 - i - j
        row_y, off_y, delta, n = rows_for_pair(i, j)
        m = normals[k]
        s = delta / (m[0] * n[1] - m[1] * n[0])
        row_x = (s * m[0], s * m[1])
        return NormalizationResult(
            "one_pair", None, (row_x, row_y), (-s * lines[k].c, off_y), (i, j, k)
        )

    n1, n2, n3 = normals
    c1, c2, c3 = (ln.c for ln in lines)
    cross = _cross(n2, n1)
    # n3 = mu*n2 + nu*n1
    mu = _cross(n3, n1) / cross
    nu = _cross(n2, n3) / cross
    kappa = sqrt(abs(mu * nu * cross), tower_of(mu * nu * cross))
    s2, s1 = mu / kappa, nu / kappa
    row_x = (s2 * n2[0], s2 * n2[1])
    row_y = (s1 * n1[0], s1 * n1[1])
    alpha = (c3 - mu * c2 - nu * c1) / kappa
    return NormalizationResult(
        "none_parallel", alpha, (row_x, row_y), (-s2 * c2, -s1 * c1), (0, 1, 2)
    )


def build_on_lines(t: LineTriple, n: int) -> PointSet:
    """Points on the input lines (part k on line k) spanning Theta(n^2) unit triangles."""
    norm = normalize_lines(t)
    if norm.case == "all_parallel":
        canon = three_parallel(n, norm.alpha)
    elif norm.case == "one_pair":
        canon = one_parallel_pair(n)
    else:
        canon = general_position(n, norm.alpha)
    det = norm.determinant
    if det != 1 and det != -1:
        raise AssertionError("normalising map is not area preserving")
    # canonical part c sits on input line order[c-1]
    labels = [norm.order[c - 1] + 1 for c in canon.parts]
    pts = [norm.inverse(p) for p in canon]
    order = sorted(range(len(pts)), key=lambda i: labels[i])
    return PointSet([pts[i] for i in order], [labels[i] for i in order])


# ---------------------------------------------------------------------------
# lattice sections and popular areas


def lattice_section(n: int) -> PointSet:
    """``ceil(sqrt(log2 n))`` columns, row-major, truncated to ``n`` points."""
    if n < 4:
        raise ValueError("n must be at least 4")
    cols = math.ceil(math.sqrt(math.log2(n)))
    return PointSet([(k % cols, k // cols) for k in range(n)])


def mode_area_count(s: PointSet) -> tuple[Fraction, int]:
    """Most frequent nonzero triangle area and its multiplicity.

    Ties go to the smallest area.
    """
    if len(s) < 3:
        raise ValueError("need at least 3 points")
    areas: Counter = Counter()
    for p, q, r in combinations(s.points, 3):
        a = abs(signed_double_area(p, q, r))
        if a:
            areas[a] += 1
    if not areas:
        raise ValueError("all triples are collinear")
    best = max(areas.values())
    area = min(a for a, c in areas.items() if c == best)
    return area / 2, best


# ---------------------------------------------------------------------------
# convex sets and grids


class ConvexSet(tuple):
    """Strictly increasing reals with strictly increasing consecutive gaps."""

    def __new__(cls, values: Sequence):
        vals = tuple(as_scalar(v) for v in values)
        for i in range(1, len(vals)):
            if not vals[i] > vals[i - 1]:
                raise ConvexityError(i, f"not strictly increasing at index {i}")
        for i in range(1, len(vals) - 1):
            if not vals[i + 1] - vals[i] > vals[i] - vals[i - 1]:
                raise ConvexityError(
                    i, f"gaps not strictly increasing at index {i}: "
                    f"{vals[i + 1] - vals[i]} <= {vals[i] - vals[i - 1]}"
                )
        return super().__new__(cls, vals)


def squares(m: int) -> ConvexSet:
    return ConvexSet([i * i for i in range(1, m + 1)])


def convex_grid(a, b) -> PointSet:
    a = a if isinstance(a, ConvexSet) else ConvexSet(a)
    b = b if isinstance(b, ConvexSet) else ConvexSet(b)
    return PointSet([(x, y) for x in a for y in b])


# ---------------------------------------------------------------------------
# random sets


def random_point_set(
    n: int, seed: int, coord_bound: int = 1000, distinct_coordinates: bool = False
) -> PointSet:
    """Seeded random rational points (numpy PCG64 stream).

    Numerators lie in ``[-coord_bound, coord_bound]`` and denominators in
    ``[1, coord_bound]``.  ``distinct_coordinates`` forbids shared x or y
    values between points.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    pts, seen, xs, ys = [], set(), set(), set()
    attempts = 0
    while len(pts) < n:
        attempts += 1
        if attempts > 1000 * (n + 1):
            raise ValueError("coordinate range too small for the requested set")
        nums = rng.integers(-coord_bound, coord_bound, size=2, endpoint=True)
        dens = rng.integers(1, coord_bound, size=2, endpoint=True)
        x = Fraction(int(nums[0]), int(dens[0]))
        y = Fraction(int(nums[1]), int(dens[1]))
        if (x, y) in seen or (distinct_coordinates and (x in xs or y in ys)):
            continue
        seen.add((x, y))
        xs.add(x)
        ys.add(y)
        pts.append((x, y))
    return PointSet(pts)
