"""Statistics on convex grids ``A x B``.

A unit triangle with vertices ``(a, x), (b, y), (c, z)`` makes the point
``(a, b, c)`` of ``A^3`` lie on the plane ``(z-y)X + (x-z)Y + (y-x)Z = 2``
built from ``(x, y, z)``, and vice versa.  That plane contains the direction
``(1, 1, 1)``, so how many points of ``A^3`` share a ``(1,1,1)``-line matters.
This module computes those line multiplicities, the rich/poor split of the
unit triangles they induce, and difference statistics of the sets.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .constructions import ConvexSet, convex_grid
from .counting import unit_triangles
from .experiment import loglog_fit
from .scalar import as_scalar, format_scalar

__all__ = [
    "GridPlane",
    "MultiplicityTable",
    "DeltaHistogram",
    "RichCensus",
    "PartitionedCount",
    "plane_of",
    "shift_multiplicity",
    "multiplicity_table",
    "delta_histogram",
    "rich_point_census",
    "rich_poor_partition",
    "dyadic_histogram",
    "tail_slope",
]


@dataclass(frozen=True)
class GridPlane:
    """``c1*X + c2*Y + c3*Z = 2``."""

    coefficients: tuple

    def __post_init__(self):
        c = tuple(as_scalar(v) for v in self.coefficients)
        if len(c) != 3:
            raise ValueError("a plane needs three coefficients")
        if not any(c):
            raise ValueError("zero coefficient triple")
        if c[0] + c[1] + c[2] != 0:
            raise ValueError("coefficients must sum to zero")
        object.__setattr__(self, "coefficients", c)

    rhs = 2

    def contains(self, p: Sequence) -> bool:
        return sum(k * as_scalar(v) for k, v in zip(self.coefficients, p)) == self.rhs

    def __str__(self):
        terms = []
        for k, name in zip(self.coefficients, "xyz"):
            if not k:
                continue
            text = format_scalar(k)
            if text == "1":
                text = name
            elif text == "-1":
                text = f"-{name}"
            else:
                text = f"{text}*{name}"
            terms.append(text)
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return f"{out} = 2"


def plane_of(p: Sequence) -> GridPlane:
    a, b, c = (as_scalar(v) for v in p)
    if a == b == c:
        raise ValueError("a point with equal coordinates gives the empty equation 0 = 2")
    return GridPlane((c - b, a - c, b - a))


def _as_set(a: Iterable) -> frozenset:
    return frozenset(as_scalar(v) for v in a)


def shift_multiplicity(p: Sequence, a: Iterable) -> int:
    """``|{t : p + (t,t,t) in A^3}|``."""
    aset = _as_set(a)
    p0, p1, p2 = (as_scalar(v) for v in p)
    if not (p0 in aset and p1 in aset and p2 in aset):
        raise ValueError(f"{tuple(p)} is not a point of A^3")
    return sum(1 for v in aset if (p1 - p0 + v) in aset and (p2 - p0 + v) in aset)


class MultiplicityTable:
    """Every ``(1,1,1)``-line meeting ``A^3``, keyed by its lowest point.

    The representative of a class is its member whose first coordinate is
    the smallest element of ``A`` reachable by a diagonal shift.
    """

    def __init__(self, a: Iterable):
        self.values = tuple(sorted(_as_set(a)))
        if not self.values:
            raise ValueError("A must be nonempty")
        by_gap: dict = defaultdict(list)
        for v0 in self.values:
            for v1 in self.values:
                for v2 in self.values:
                    by_gap[(v1 - v0, v2 - v0)].append(v0)
        self._by_gap = {gap: len(starts) for gap, starts in by_gap.items()}
        self.multiplicities = {
            (min(starts), min(starts) + gap[0], min(starts) + gap[1]): len(starts)
            for gap, starts in by_gap.items()
        }

    def __len__(self) -> int:
        return len(self.multiplicities)

    def w(self, p: Sequence) -> int:
        p0, p1, p2 = (as_scalar(v) for v in p)
        return self._by_gap[(p1 - p0, p2 - p0)]

    def point_count(self) -> int:
        return sum(self.multiplicities.values())

    def by_multiplicity(self) -> dict[int, int]:
        """``w -> |{p in A^3 : w(p) = w}|``."""
        hist: Counter = Counter()
        for m in self.multiplicities.values():
            hist[m] += m
        return dict(sorted(hist.items()))


def multiplicity_table(a: Iterable) -> MultiplicityTable:
    return MultiplicityTable(a)


def dyadic_histogram(by_multiplicity: dict[int, int]) -> dict[int, int]:
    """``i -> |{p : 2^(i-1) <= w(p) < 2^i}|`` for ``i >= 1``."""
    out: Counter = Counter()
    for w, count in by_multiplicity.items():
        out[w.bit_length()] += count
    return dict(sorted(out.items()))


class RichCensus(NamedTuple):
    count: int
    histogram: dict


def rich_point_census(a: Iterable, k: int, table: MultiplicityTable | None = None) -> RichCensus:
    """Number of points of ``A^3`` with ``w >= k``, and the dyadic histogram of ``w``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    table = table or MultiplicityTable(a)
    by_w = table.by_multiplicity()
    rich = sum(c for w, c in by_w.items() if w >= k)
    return RichCensus(rich, dyadic_histogram(by_w))


@dataclass
class DeltaHistogram:
    """``s -> #{(x, y) : x - y = s}``."""

    counts: dict

    def __getitem__(self, s) -> int:
        return self.counts.get(as_scalar(s), 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def level(self, tau: int) -> int:
        """Number of differences represented exactly ``tau`` times."""
        return sum(1 for c in self.counts.values() if c == tau)

    def at_least(self, tau: int) -> int:
        return sum(1 for c in self.counts.values() if c >= tau)

    def tail_curve(self, taus: Iterable[int]) -> dict[int, int]:
        return {t: self.at_least(t) for t in taus}


def delta_histogram(x: Iterable, y: Iterable) -> DeltaHistogram:
    xs, ys = _as_set(x), _as_set(y)
    if not xs or not ys:
        raise ValueError("both sets must be nonempty")
    counts = Counter(u - v for u in xs for v in ys)
    return DeltaHistogram(dict(sorted(counts.items())))


def tail_slope(hist: DeltaHistogram, taus: Sequence[int] = (2, 4, 8, 16)) -> float:
    """Log-log slope of ``tau -> M_{>=tau}``."""
    curve = hist.tail_curve(taus)
    slope, _ = loglog_fit(list(curve), list(curve.values()))
    return slope


@dataclass(frozen=True)
class PartitionedCount:
    rich_rich: int
    rich_poor: int
    poor_rich: int
    poor_poor: int

    @property
    def total(self) -> int:
        return self.rich_rich + self.rich_poor + self.poor_rich + self.poor_poor

    def as_dict(self) -> dict[str, int]:
        return {
            "rich_rich": self.rich_rich,
            "rich_poor": self.rich_poor,
            "poor_rich": self.poor_rich,
            "poor_poor": self.poor_poor,
        }


def rich_poor_partition(a: Iterable, b: Iterable, k: int) -> PartitionedCount:
    """Split the unit triangles of ``A x B`` by richness of their two coordinate triples.

    The first word of each class refers to the abscissa triple in ``A^3``,
    the second to the ordinate triple in ``B^3``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    a = a if isinstance(a, ConvexSet) else ConvexSet(a)
    b = b if isinstance(b, ConvexSet) else ConvexSet(b)
    grid = convex_grid(a, b)
    wa, wb = MultiplicityTable(a), MultiplicityTable(b)
    pts = grid.points
    tally: Counter = Counter()
    for i, j, m in unit_triangles(grid):
        p, q, r = pts[i], pts[j], pts[m]
        rich_x = wa.w((p.x, q.x, r.x)) >= k
        rich_y = wb.w((p.y, q.y, r.y)) >= k
        tally[(rich_x, rich_y)] += 1
    return PartitionedCount(
        tally[(True, True)], tally[(True, False)], tally[(False, True)], tally[(False, False)]
    )
