"""Log-log scaling fits and the experiment result record."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Iterable, Optional

import numpy as np

__all__ = ["ScalingSeries", "ExperimentResult", "scaling_fit", "loglog_fit"]

_FOUR_PLACES = Decimal("0.0001")


def loglog_fit(xs: Iterable, ys: Iterable) -> tuple[float, float]:
    """Least-squares ``(slope, intercept)`` of ``log y`` against ``log x``.

    Pairs with ``y == 0`` are dropped with a warning; fewer than two usable
    pairs is an error.
    """
    pairs = [(float(x), float(y)) for x, y in zip(xs, ys)]
    usable = [(x, y) for x, y in pairs if y > 0]
    if len(usable) < len(pairs):
        warnings.warn(f"dropped {len(pairs) - len(usable)} zero count(s) from the fit", stacklevel=2)
    if len(usable) < 2:
        raise ValueError("a log-log fit needs at least two points with positive counts")
    lx = np.log([x for x, _ in usable])
    ly = np.log([y for _, y in usable])
    slope, intercept = np.polyfit(lx, ly, 1)
    return float(slope), float(intercept)


@dataclass(frozen=True)
class ScalingSeries:
    points: tuple

    def __post_init__(self):
        pts = tuple((int(n), int(c)) for n, c in self.points)
        for (a, _), (b, _) in zip(pts, pts[1:]):
            if b <= a:
                raise ValueError("n values must be strictly increasing")
        if any(c < 0 for _, c in pts):
            raise ValueError("counts must be non-negative")
        object.__setattr__(self, "points", pts)

    @property
    def ns(self) -> list[int]:
        return [n for n, _ in self.points]

    @property
    def counts(self) -> list[int]:
        return [c for _, c in self.points]

    def fit(self) -> tuple[float, float]:
        return loglog_fit(self.ns, self.counts)


def scaling_fit(series: ScalingSeries) -> Decimal:
    """Fitted exponent of ``count ~ n^slope``, to four decimal places."""
    slope, _ = series.fit()
    return Decimal(repr(slope)).quantize(_FOUR_PLACES, rounding=ROUND_HALF_EVEN)


@dataclass
class ExperimentResult:
    subcommand: str
    params: dict = field(default_factory=dict)
    total: Optional[int] = None
    restricted: Optional[int] = None
    classes: dict = field(default_factory=dict)
    audits: dict = field(default_factory=dict)
    slope: Optional[Decimal] = None
    elapsed_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {
            "subcommand": self.subcommand,
            "params": self.params,
            "counts": {
                "total": self.total,
                "restricted": self.restricted,
                "classes": self.classes,
            },
            "audits": self.audits,
            "slope": None if self.slope is None else f"{self.slope:.4f}",
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        out.update(self.extra)
        return out
