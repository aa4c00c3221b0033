"""Exact counting of unit-area triangles and the geometry around it."""

from .counting import (
    IncidenceStats,
    TriangleCount,
    count_brute_force,
    count_line_bucket,
    incidence_stats,
    unit_triangles,
)
from .errors import InvariantError
from .geom2d import (
    CanonicalLine,
    Point2,
    PointSet,
    canonical_line_through,
    signed_double_area,
    unit_locus_line,
)
from .pts import read_pts, write_pts
from .scalar import QuadExt, format_scalar, parse_scalar, sqrt

__version__ = "0.1.0"
