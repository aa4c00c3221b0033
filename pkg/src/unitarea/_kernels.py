"""Vectorised exact determinant kernels.

A point set whose coordinates live in Q(sqrt(d1), ..., sqrt(dk)) with rational
radicands is written over the basis {prod_{i in S} sqrt(d_i)} with integer
coefficients after scaling by a common denominator ``L``.  A signed double
area is then an integer vector over the same basis, and a triangle has unit
area exactly when every irrational component vanishes and the rational one is
+-2*L**2 (the basis is linearly independent because each radicand was
adjoined as a non-square).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

import numpy as np

from .scalar import QuadExt

_INT64_SAFE = 2**62


class Linearized:
    __slots__ = ("radicands", "xs", "ys", "scale", "products", "dtype")

    def __init__(self, radicands, xs, ys, scale, products, dtype):
        self.radicands = radicands
        self.xs = xs
        self.ys = ys
        self.scale = scale
        self.products = products
        self.dtype = dtype

    @property
    def width(self) -> int:
        return self.xs.shape[1]


def _components(x, depth: int, out: dict, mask: int = 0, level: Optional[int] = None):
    if not isinstance(x, QuadExt):
        out[mask] = out.get(mask, Fraction(0)) + x
        return
    lvl = len(x.tower) - 1
    _components(x.a, depth, out, mask)
    _components(x.b, depth, out, mask | (1 << lvl))


def linearize(points) -> Optional[Linearized]:
    """Integer basis representation of ``points``, or None when not possible."""
    tower = ()
    for p in points:
        for c in (p.x, p.y):
            if isinstance(c, QuadExt) and len(c.tower) > len(tower):
                tower = c.tower
    if any(isinstance(d, QuadExt) for d in tower):
        return None
    k = len(tower)
    width = 1 << k
    comps = []
    den = 1
    for p in points:
        row = []
        for c in (p.x, p.y):
            out: dict = {}
            _components(c, k, out)
            for v in out.values():
                den = den * v.denominator // math.gcd(den, v.denominator)
            row.append(out)
        comps.append(row)
    n = len(points)
    xs = [[0] * width for _ in range(n)]
    ys = [[0] * width for _ in range(n)]
    big = 0
    for i, (cx, cy) in enumerate(comps):
        for m, v in cx.items():
            xs[i][m] = int(v * den)
            big = max(big, abs(xs[i][m]))
        for m, v in cy.items():
            ys[i][m] = int(v * den)
            big = max(big, abs(ys[i][m]))
    rad = [int(d) for d in tower]
    products = []
    for s in range(width):
        for t in range(width):
            coef = 1
            for i in range(k):
                if (s >> i) & 1 and (t >> i) & 1:
                    coef *= rad[i]
            products.append((s, t, s ^ t, coef))
    maxcoef = max(c for *_, c in products)
    bound = 2 * width * maxcoef * (2 * big) ** 2 + 2 * den * den
    dtype = np.int64 if bound < _INT64_SAFE else object
    xs = np.array(xs, dtype=dtype).reshape(n, width)
    ys = np.array(ys, dtype=dtype).reshape(n, width)
    return Linearized(tuple(rad), xs, ys, den, products, dtype)


def _det_components(lin: Linearized, ax, ay, bx, by):
    """Components of det(p, q, r) over q in rows (ax, ay) and r in columns (bx, by).

    ``ax``/``ay`` etc. are coordinates already translated by ``-p``.
    """
    comps = [None] * lin.width
    for s, t, m, coef in lin.products:
        term = np.multiply.outer(ax[:, s], by[:, t]) - np.multiply.outer(ay[:, t], bx[:, s])
        if coef != 1:
            term = term * coef
        comps[m] = term if comps[m] is None else comps[m] + term
    return comps


def _unit_mask(lin: Linearized, comps):
    target = 2 * lin.scale * lin.scale
    mask = (comps[0] == target) | (comps[0] == -target)
    for c in comps[1:]:
        mask &= c == 0
    return mask


def unit_mask_for_anchor(lin: Linearized, i: int, rows, cols):
    """Boolean matrix: det(p_i, p_rows[j], p_cols[k]) == +-2 exactly."""
    px, py = lin.xs[i], lin.ys[i]
    ax, ay = lin.xs[rows] - px, lin.ys[rows] - py
    bx, by = lin.xs[cols] - px, lin.ys[cols] - py
    return _unit_mask(lin, _det_components(lin, ax, ay, bx, by))


def count_all_for_anchor(lin: Linearized, i: int) -> int:
    """Unit-area triples {i < j < k} with smallest index ``i``."""
    n = lin.xs.shape[0]
    rest = np.arange(i + 1, n)
    if len(rest) < 2:
        return 0
    mask = unit_mask_for_anchor(lin, i, rest, rest)
    return int(np.count_nonzero(np.triu(mask, k=1)))


def count_parts_for_anchor(lin: Linearized, i: int, second, third) -> int:
    if len(second) == 0 or len(third) == 0:
        return 0
    return int(np.count_nonzero(unit_mask_for_anchor(lin, i, second, third)))


def triples_for_anchor(lin: Linearized, i: int) -> list[tuple[int, int, int]]:
    n = lin.xs.shape[0]
    rest = np.arange(i + 1, n)
    if len(rest) < 2:
        return []
    mask = np.triu(unit_mask_for_anchor(lin, i, rest, rest), k=1)
    js, ks = np.nonzero(mask)
    return [(i, int(rest[j]), int(rest[k])) for j, k in zip(js, ks)]
