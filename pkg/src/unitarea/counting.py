"""Counting unit-area triangles.

Two independent counters:

* :func:`count_brute_force` tests every triple (the oracle);
* :func:`count_line_bucket` sums ``|l'_pq ∩ S|`` over ordered pairs and divides
  by three, using a lookup of the lines spanned by ``S``.

Both optionally report the *restricted* count of triples with one vertex in
each of the parts 1, 2, 3.
"""

from __future__ import annotations

import time
from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from . import _kernels
from .errors import InvariantError
from .geom2d import (
    CanonicalLine,
    PointSet,
    canonical_line_through,
    signed_double_area,
    unit_locus_line,
)

__all__ = [
    "TriangleCount",
    "IncidenceStats",
    "InvariantError",
    "count_brute_force",
    "count_line_bucket",
    "incidence_stats",
    "unit_triangles",
    "spanned_lines",
    "LineLookup",
]


@dataclass
class TriangleCount:
    total: int
    restricted: Optional[int] = None
    elapsed: float = 0.0

    def __post_init__(self):
        if self.restricted is not None and self.restricted > self.total:
            raise InvariantError("restricted count exceeds total")


@dataclass
class IncidenceStats:
    line_counts: dict
    at_least: dict = field(default_factory=dict)

    @property
    def n_lines(self) -> int:
        return len(self.line_counts)


def _chunks(n: int, parts: int) -> list[range]:
    parts = max(1, min(parts, n))
    step, extra = divmod(n, parts)
    out, start = [], 0
    for k in range(parts):
        stop = start + step + (1 if k < extra else 0)
        out.append(range(start, stop))
        start = stop
    return out


def _map_chunks(fn, n: int, threads: int) -> list:
    chunks = _chunks(n, threads)
    if threads <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, chunks))


def _part_indices(s: PointSet):
    return [np.array([i for i, k in enumerate(s.parts) if k == part], dtype=np.intp)
            for part in (1, 2, 3)]


def count_brute_force(s: PointSet, threads: int = 1, kernel: str = "auto") -> TriangleCount:
    """Count unordered triples whose double area is exactly +-2.

    ``kernel="exact"`` evaluates :func:`signed_double_area` on every triple;
    ``"auto"`` uses the vectorised integer-basis kernel when the coordinates
    allow it and falls back to the exact loop otherwise.
    """
    t0 = time.perf_counter()
    n = len(s)
    lin = _kernels.linearize(s.points) if kernel == "auto" and n >= 3 else None

    if lin is not None:
        def total_chunk(idx):
            return sum(_kernels.count_all_for_anchor(lin, i) for i in idx)
    else:
        pts = s.points

        def total_chunk(idx):
            hits = 0
            for i in idx:
                p = pts[i]
                for j in range(i + 1, n):
                    q = pts[j]
                    for k in range(j + 1, n):
                        a = signed_double_area(p, q, pts[k])
                        if a == 2 or a == -2:
                            hits += 1
            return hits

    total = sum(_map_chunks(total_chunk, n, threads))

    restricted = None
    if s.parts is not None:
        s1, s2, s3 = _part_indices(s)
        if lin is not None:
            def part_chunk(idx):
                return sum(_kernels.count_parts_for_anchor(lin, int(s1[i]), s2, s3) for i in idx)
        else:
            pts = s.points

            def part_chunk(idx):
                hits = 0
                for i in idx:
                    p = pts[s1[i]]
                    for j in s2:
                        q = pts[j]
                        for k in s3:
                            a = signed_double_area(p, q, pts[k])
                            if a == 2 or a == -2:
                                hits += 1
                return hits

        restricted = sum(_map_chunks(part_chunk, len(s1), threads))
    return TriangleCount(total, restricted, time.perf_counter() - t0)


def spanned_lines(s: PointSet) -> dict[CanonicalLine, list[int]]:
    """Every line through at least two points, mapped to its point indices."""
    on: dict[CanonicalLine, set] = defaultdict(set)
    pts = s.points
    for i, j in combinations(range(len(pts)), 2):
        line = canonical_line_through(pts[i], pts[j])
        bucket = on[line]
        bucket.add(i)
        bucket.add(j)
    return {line: sorted(idx) for line, idx in on.items()}


class LineLookup:
    """Points of ``S`` on an arbitrary line.

    Spanned lines are answered from a table.  Any other line holds at most
    one point; candidates are screened in floating point with a generous
    tolerance and then confirmed exactly, so the answer is exact.
    """

    _REL_TOL = 1e-9

    def __init__(self, s: PointSet):
        self.s = s
        self.spanned = spanned_lines(s)
        self._fx = np.array([float(p.x) for p in s.points])
        self._fy = np.array([float(p.y) for p in s.points])
        self._mag = np.abs(self._fx) + np.abs(self._fy)

    def points_on(self, line: CanonicalLine) -> list[int]:
        hit = self.spanned.get(line)
        if hit is not None:
            return hit
        a, b, c = float(line.a), float(line.b), float(line.c)
        resid = np.abs(a * self._fx + b * self._fy - c)
        scale = (abs(a) + abs(b)) * self._mag + abs(c) + 1.0
        cand = np.nonzero(resid <= self._REL_TOL * scale)[0]
        found = [int(i) for i in cand if line.contains(self.s.points[i])]
        if len(found) > 1:
            raise InvariantError(f"{line!r} holds {len(found)} points but is not spanned")
        return found


def _locus_multiplicities(s: PointSet, threads: int) -> Counter:
    pts = s.points
    n = len(pts)

    def chunk(idx):
        loci = Counter()
        for i in idx:
            p = pts[i]
            for j in range(n):
                if j != i:
                    loci[unit_locus_line(p, pts[j])] += 1
        return loci

    merged = Counter()
    for part in _map_chunks(chunk, n, threads):
        merged.update(part)
    return merged


def count_line_bucket(s: PointSet, threads: int = 1) -> TriangleCount:
    """``|U| = (1/3) * sum over ordered pairs p != q of |l'_pq ∩ S|``."""
    t0 = time.perf_counter()
    n = len(s)
    if n < 3:
        return TriangleCount(0, 0 if s.parts is not None else None, time.perf_counter() - t0)
    lookup = LineLookup(s)
    loci = _locus_multiplicities(s, threads)
    incidences = 0
    for line, mult in loci.items():
        incidences += mult * len(lookup.points_on(line))
    if incidences % 3:
        raise InvariantError(f"pair-incidence sum {incidences} is not divisible by 3")
    total = incidences // 3

    restricted = None
    if s.parts is not None:
        labels = s.parts
        pts = s.points
        s1 = [i for i, k in enumerate(labels) if k == 1]
        s2 = [i for i, k in enumerate(labels) if k == 2]
        restricted = 0
        for i in s1:
            for j in s2:
                for a, b in ((i, j), (j, i)):
                    on = lookup.points_on(unit_locus_line(pts[a], pts[b]))
                    restricted += sum(1 for r in on if labels[r] == 3)
    return TriangleCount(total, restricted, time.perf_counter() - t0)


def unit_triangles(s: PointSet) -> list[tuple[int, int, int]]:
    """All unit-area triangles as sorted index triples, found through line buckets."""
    lookup = LineLookup(s)
    pts = s.points
    found = set()
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            if i != j:
                for r in lookup.points_on(unit_locus_line(p, q)):
                    found.add(tuple(sorted((i, j, r))))
    return sorted(found)


def incidence_stats(s: PointSet) -> IncidenceStats:
    """Per-line point counts over all spanned lines and the ``N_{>=j}`` curve."""
    if len(s) < 2:
        raise ValueError("incidence statistics need at least 2 points")
    counts = {line: len(idx) for line, idx in spanned_lines(s).items()}
    if sum(comb(c, 2) for c in counts.values()) != comb(len(s), 2):
        raise InvariantError("spanned lines do not partition the point pairs")
    hist = Counter(counts.values())
    at_least, running = {}, 0
    for j in range(max(hist), 1, -1):
        running += hist.get(j, 0)
        at_least[j] = running
    return IncidenceStats(counts, dict(sorted(at_least.items())))
