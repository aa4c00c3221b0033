"""Exact plane geometry: points, canonical lines, signed areas."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .scalar import Scalar, as_scalar, join_towers, sign, tower_of

__all__ = [
    "Point2",
    "CanonicalLine",
    "PointSet",
    "DegeneratePairError",
    "DuplicatePointError",
    "signed_double_area",
    "unit_locus_line",
    "canonical_line_through",
    "collinear",
    "apply_affine",
    "orientation",
]


class DegeneratePairError(ValueError):
    """Two points that must be distinct coincide."""


class DuplicatePointError(ValueError):
    pass


@dataclass(frozen=True)
class Point2:
    x: Scalar
    y: Scalar

    def __post_init__(self):
        object.__setattr__(self, "x", as_scalar(self.x))
        object.__setattr__(self, "y", as_scalar(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    @property
    def tower(self) -> tuple:
        return join_towers(tower_of(self.x), tower_of(self.y))

    def __repr__(self):
        return f"Point2({self.x}, {self.y})"


@dataclass(frozen=True)
class CanonicalLine:
    """The line ``a*x + b*y = c`` with the first nonzero of ``(a, b)`` equal to 1.

    Two equal lines always have identical ``(a, b, c)``, so instances are
    usable as dictionary keys.  Build with :meth:`through_coefficients`.
    """

    a: Scalar
    b: Scalar
    c: Scalar

    @classmethod
    def through_coefficients(cls, a, b, c) -> "CanonicalLine":
        a, b, c = as_scalar(a), as_scalar(b), as_scalar(c)
        if a:
            return cls(Fraction(1), b / a, c / a)
        if b:
            return cls(Fraction(0), Fraction(1), c / b)
        raise ValueError("line needs (a, b) != (0, 0)")

    def contains(self, p: Point2) -> bool:
        return self.a * p.x + self.b * p.y == self.c

    def is_parallel(self, other: "CanonicalLine") -> bool:
        return self.a == other.a and self.b == other.b

    def __repr__(self):
        return f"CanonicalLine({self.a}*x + {self.b}*y = {self.c})"


class PointSet(Sequence[Point2]):
    """An ordered set of distinct points, optionally labelled with parts 1..3."""

    def __init__(self, points: Iterable, parts: Optional[Iterable[int]] = None):
        pts = tuple(p if isinstance(p, Point2) else Point2(*p) for p in points)
        seen = set()
        for i, p in enumerate(pts):
            if p in seen:
                raise DuplicatePointError(f"duplicate point {p!r} at index {i}")
            seen.add(p)
        self.points = pts
        if parts is not None:
            parts = tuple(int(k) for k in parts)
            if len(parts) != len(pts):
                raise ValueError("one part label per point is required")
            if any(k not in (1, 2, 3) for k in parts):
                raise ValueError("part labels must be 1, 2 or 3")
        self.parts = parts
        self._index = {p: i for i, p in enumerate(pts)}

    @classmethod
    def from_parts(cls, s1: Iterable, s2: Iterable, s3: Iterable) -> "PointSet":
        pts, labels = [], []
        for k, group in enumerate((s1, s2, s3), start=1):
            for p in group:
                p = p if isinstance(p, Point2) else Point2(*p)
                pts.append(p)
                labels.append(k)
        return cls(pts, labels)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __iter__(self) -> Iterator[Point2]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return p in self._index

    def index(self, p) -> int:
        return self._index[p]

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.points == other.points and self.parts == other.parts

    def __hash__(self):
        return hash((self.points, self.parts))

    def part(self, k: int) -> list[Point2]:
        if self.parts is None:
            raise ValueError("point set has no part labels")
        return [p for p, lab in zip(self.points, self.parts) if lab == k]

    @property
    def tower(self) -> tuple:
        return join_towers(*(p.tower for p in self.points))

    def map(self, fn) -> "PointSet":
        return PointSet([fn(p) for p in self.points], self.parts)

    def __repr__(self):
        head = ", ".join(repr(p) for p in self.points[:4])
        more = ", ..." if len(self) > 4 else ""
        return f"PointSet([{head}{more}], n={len(self)})"


def signed_double_area(p: Point2, q: Point2, r: Point2) -> Scalar:
    """det [[px, qx, rx], [py, qy, ry], [1, 1, 1]]; +-2 exactly for unit area."""
    return (q.x - p.x) * (r.y - p.y) - (r.x - p.x) * (q.y - p.y)


def collinear(*pts: Point2) -> bool:
    if len(pts) < 3:
        return True
    p = pts[0]
    q = next((u for u in pts[1:] if u != p), None)
    if q is None:
        return True
    return all(signed_double_area(p, q, r) == 0 for r in pts[1:])


def unit_locus_line(p: Point2, q: Point2) -> CanonicalLine:
    """The line of points ``r`` with ``signed_double_area(p, q, r) == 2``.

    This is the unit-area locus on the left of the vector from ``p`` to ``q``.
    """
    if p == q:
        raise DegeneratePairError(f"unit locus of a degenerate pair {p!r}")
    a = p.y - q.y
    b = q.x - p.x
    return CanonicalLine.through_coefficients(a, b, 2 + a * p.x + b * p.y)


def canonical_line_through(p: Point2, q: Point2) -> CanonicalLine:
    if p == q:
        raise DegeneratePairError(f"no unique line through {p!r} twice")
    a = p.y - q.y
    b = q.x - p.x
    return CanonicalLine.through_coefficients(a, b, a * p.x + b * p.y)


def apply_affine(matrix, offset, p: Point2) -> Point2:
    """``matrix @ p + offset`` with a 2x2 nested-sequence matrix."""
    (m00, m01), (m10, m11) = matrix
    return Point2(m00 * p.x + m01 * p.y + offset[0], m10 * p.x + m11 * p.y + offset[1])


def orientation(p: Point2, q: Point2, r: Point2) -> int:
    return sign(signed_double_area(p, q, r))
