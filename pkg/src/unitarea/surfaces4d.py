"""The surfaces sigma_pq in R^4 and the audits built on them.

``sigma_pq`` is the set of ``(u, v) = ((x, y), (z, w))`` with
``l'_pu == l'_qv``.  Away from one excluded line it is the graph of the
rational map :func:`sigma_map`, equivalently of the projective map given by
:func:`projective_matrix`.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterable, Optional, Sequence

from .counting import LineLookup, spanned_lines
from .geom2d import (
    CanonicalLine,
    DegeneratePairError,
    canonical_line_through,
    Point2,
    PointSet,
    collinear,
    signed_double_area,
    unit_locus_line,
)

__all__ = [
    "SigmaSurface",
    "QuadrupleSet",
    "GeneralPositionError",
    "SlantedReport",
    "require_general_position",
    "sigma_map",
    "sigma_inverse_map",
    "apply_projective",
    "sigma_member",
    "projective_matrix",
    "matrix_determinant",
    "slanted_audit",
    "pair_intersection_audit",
    "distinct_surface_audit",
    "enumerate_Q",
    "collinear_quadruple_check",
]


class GeneralPositionError(ValueError):
    """Two points share an x- or a y-coordinate."""


def require_general_position(points: Iterable[Point2]) -> None:
    xs, ys = {}, {}
    for p in points:
        if p.x in xs and xs[p.x] != p:
            raise GeneralPositionError(f"{xs[p.x]!r} and {p!r} share x = {p.x}")
        if p.y in ys and ys[p.y] != p:
            raise GeneralPositionError(f"{ys[p.y]!r} and {p!r} share y = {p.y}")
        xs[p.x] = p
        ys[p.y] = p


def projective_matrix(p: Point2, q: Point2) -> tuple:
    """3x3 matrix of T_pq acting on homogeneous ``(1, x, y)``."""
    a, b = p.x, p.y
    c, d = q.x, q.y
    k = a * d - b * c
    return (
        (k + 2, b - d, c - a),
        (c * k + 2 * (c - a), c * (b - d) + 2, c * (c - a)),
        (d * k + 2 * (d - b), d * (b - d), d * (c - a) + 2),
    )


def matrix_determinant(m) -> object:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


@dataclass(frozen=True)
class SigmaSurface:
    p: Point2
    q: Point2
    matrix: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.p == self.q:
            raise DegeneratePairError("sigma_pq needs p != q")
        object.__setattr__(self, "matrix", projective_matrix(self.p, self.q))

    def flipped(self) -> "SigmaSurface":
        """sigma_qp: the same surface with the two factors of R^2 swapped."""
        return SigmaSurface(self.q, self.p)

    def contains(self, u: Point2, v: Point2) -> bool:
        return sigma_member(self.p, u, self.q, v)


def sigma_map(surface: SigmaSurface, xy: Point2) -> Optional[Point2]:
    """The unique ``(z, w)`` with ``((x, y), (z, w))`` on the surface, or None.

    None exactly on the line where ``(b-d)(x-a) + (c-a)(y-b) + 2`` vanishes.
    """
    a, b = surface.p.x, surface.p.y
    c, d = surface.q.x, surface.q.y
    x, y = xy.x, xy.y
    den = (b - d) * (x - a) + (c - a) * (y - b) + 2
    if not den:
        return None
    return Point2(2 * (x - a) / den + c, 2 * (y - b) / den + d)


def sigma_inverse_map(surface: SigmaSurface, zw: Point2) -> Optional[Point2]:
    return sigma_map(surface.flipped(), zw)


def apply_projective(m, xy: Point2) -> Optional[Point2]:
    h = (1, xy.x, xy.y)
    z0, z1, z2 = (r[0] * h[0] + r[1] * h[1] + r[2] * h[2] for r in m)
    if not z0:
        return None
    return Point2(z1 / z0, z2 / z0)


def sigma_member(p: Point2, u: Point2, q: Point2, v: Point2) -> bool:
    """Whether ``l'_pu == l'_qv``, via equal slopes and equal intercept terms.

    With p = (a, b), u = (x, y), q = (c, d), v = (z, w) the test is
    ``(y-b)/(x-a) == (w-d)/(z-c)`` and
    ``(bx-ay+2)/(x-a) == (dz-cw+2)/(z-c)``; when ``x == a`` or ``z == c`` the
    chart breaks down and the loci are compared directly.
    """
    if p == u or q == v:
        raise DegeneratePairError("sigma_member needs p != u and q != v")
    a, b = p.x, p.y
    x, y = u.x, u.y
    c, d = q.x, q.y
    z, w = v.x, v.y
    if x == a or z == c:
        return unit_locus_line(p, u) == unit_locus_line(q, v)
    slope_ok = (y - b) / (x - a) == (w - d) / (z - c)
    return slope_ok and (b * x - a * y + 2) / (x - a) == (d * z - c * w + 2) / (z - c)


# ---------------------------------------------------------------------------
# slantedness


@dataclass
class SlantedReport:
    probes: int = 0
    forward_images: int = 0
    inverse_images: int = 0
    no_image: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _fiber_by_solving(p: Point2, q: Point2, u: Point2) -> list[Point2]:
    """All v with l'_qv == l'_pu, solved from scratch on the line l'_pu.

    v must be q + t*(u - p) (parallel sides) and det(q, v, r) = 2 for a point
    r of l'_pu, which is linear in t.
    """
    if u == p:
        return []
    line = unit_locus_line(p, u)
    direction = u - p
    r = _point_on(line)
    lin = direction.x * (r.y - q.y) - direction.y * (r.x - q.x)
    if not lin:
        return []
    t = 2 / lin
    return [Point2(q.x + t * direction.x, q.y + t * direction.y)]


def _point_on(line: CanonicalLine) -> Point2:
    if line.a:
        return Point2(line.c / line.a, 0)
    return Point2(0, line.c / line.b)


def slanted_audit(surface: SigmaSurface, probes: Iterable[Point2]) -> SlantedReport:
    """Check both coordinate projections have fibers of size <= 1 at each probe.

    Each fiber is computed twice, by :func:`sigma_map` and by solving the
    defining condition directly; they must agree, and a found image must
    round-trip through the opposite chart.
    """
    rep = SlantedReport()
    p, q = surface.p, surface.q
    for probe in probes:
        rep.probes += 1
        for direction, (src, dst), chart in (
            ("forward", (p, q), surface),
            ("inverse", (q, p), surface.flipped()),
        ):
            if probe == src:
                continue
            image = sigma_map(chart, probe)
            solved = _fiber_by_solving(src, dst, probe)
            if len(solved) > 1:
                rep.failures.append((direction, probe, "fiber has more than one point"))
                continue
            if image is None:
                rep.no_image += 1
                if solved:
                    rep.failures.append((direction, probe, "map undefined but fiber nonempty"))
                continue
            if direction == "forward":
                rep.forward_images += 1
            else:
                rep.inverse_images += 1
            if not solved or solved[0] != image:
                rep.failures.append((direction, probe, "map disagrees with direct solve"))
                continue
            back = sigma_map(chart.flipped(), image)
            if back != probe:
                rep.failures.append((direction, probe, "round trip failed"))
    return rep


# ---------------------------------------------------------------------------
# pairwise intersections


def pair_intersection_audit(
    s1: SigmaSurface, s2: SigmaSurface, domain: Sequence[Point2]
) -> tuple[int, list]:
    """Points ``(u, v)`` of ``domain x domain`` incident to both surfaces.

    Only incidences with ``p, q, u, v`` not all collinear count, for both
    surfaces; ``u != v`` as points of ``(S x S)``.  Returns the count and the
    witnesses.
    """
    if (s1.p, s1.q) == (s2.p, s2.q):
        raise ValueError("the two surfaces have the same defining pair")
    members = set(domain)
    witnesses = []
    for u in domain:
        if u == s1.p or u == s2.p:
            continue
        v = sigma_map(s1, u)
        if v is None or v not in members or v == u or v == s1.q or v == s2.q:
            continue
        if unit_locus_line(s1.p, u) != unit_locus_line(s1.q, v):
            raise AssertionError("sigma_map produced a non-member")
        if unit_locus_line(s2.p, u) != unit_locus_line(s2.q, v):
            continue
        if collinear(s1.p, s1.q, u, v) or collinear(s2.p, s2.q, u, v):
            continue
        witnesses.append((u, v))
    return len(witnesses), witnesses


def _normalized_matrix(m) -> tuple:
    flat = [e for row in m for e in row]
    lead = next(e for e in flat if e)
    return tuple(e / lead for e in flat)


def distinct_surface_audit(surfaces: Iterable[SigmaSurface]) -> list:
    """Pairs of distinct defining pairs whose projective maps coincide."""
    seen: dict = {}
    clashes = []
    for s in surfaces:
        key = _normalized_matrix(s.matrix)
        other = seen.get(key)
        if other is not None and (other.p, other.q) != (s.p, s.q):
            clashes.append((other, s))
        else:
            seen[key] = s
    return clashes


# ---------------------------------------------------------------------------
# the quadruple set Q


@dataclass
class QuadrupleSet:
    k: int
    cap: int
    quadruples: list

    def __len__(self) -> int:
        return len(self.quadruples)


def enumerate_Q(s: PointSet, k: int, cap: Optional[int] = None) -> QuadrupleSet:
    """All ``(p, u, q, v)`` with ``l'_pu == l'_qv`` a medium-rich line.

    Pairs are taken from ``(S x S)*`` (spanning line holds at most ``cap``
    points, default ``ceil(sqrt(n))``), grouped by their unit locus; a locus
    qualifies when it holds between ``k`` and ``n/k`` points of ``S``.
    Diagonal quadruples ``(p, u, p, u)`` are included.
    """
    n = len(s)
    if cap is None:
        r = isqrt(n)
        cap = r if r * r == n else r + 1
    pts = s.points
    on_line = {line: len(idx) for line, idx in spanned_lines(s).items()} if n >= 2 else {}
    lookup = LineLookup(s) if n >= 2 else None
    groups: dict = defaultdict(list)
    for i, p in enumerate(pts):
        for j, u in enumerate(pts):
            if i == j:
                continue
            if on_line[canonical_line_through(p, u)] > cap:
                continue
            groups[unit_locus_line(p, u)].append((p, u))
    quads = []
    for line, pairs in groups.items():
        m = len(lookup.points_on(line))
        if m < k or m * k > n:
            continue
        for p, u in pairs:
            for q, v in pairs:
                quads.append((p, u, q, v))
    return QuadrupleSet(k, cap, quads)


def collinear_quadruple_check(p: Point2, u: Point2, q: Point2, v: Point2) -> bool:
    """For four collinear points with ``l'_pu == l'_qv``: is ``|pu| == |qv|``?"""
    if not collinear(p, u, q, v):
        raise ValueError("the four points are not collinear")
    if unit_locus_line(p, u) != unit_locus_line(q, v):
        raise ValueError("precondition failed: l'_pu != l'_qv")
    du, dv = u - p, v - q
    return du.x * du.x + du.y * du.y == dv.x * dv.x + dv.y * dv.y
