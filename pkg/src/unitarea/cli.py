"""Batch driver: ``generate``, ``count``, ``audit``, ``gridstats``, ``scaling``.

Every run prints a JSON report (sorted keys) to stdout and, with
``--report FILE``, writes the same report to a file.  Exit codes: 0 success,
1 usage error, 2 bad input data, 3 failed internal invariant.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .constructions import (
    ConvexityError,
    ConvexSet,
    DuplicateLinesError,
    convex_grid,
    general_position,
    lattice_section,
    one_parallel_pair,
    random_point_set,
    squares,
    three_parallel,
)
from .counting import count_brute_force, count_line_bucket
from .errors import InvariantError
from .experiment import ExperimentResult, ScalingSeries, scaling_fit
from .gridstats import (
    MultiplicityTable,
    delta_histogram,
    rich_point_census,
    rich_poor_partition,
)
from .pts import PtsFormatError, read_pts, write_pts
from .scalar import format_scalar, parse_scalar
from .surfaces4d import (
    GeneralPositionError,
    SigmaSurface,
    apply_projective,
    distinct_surface_audit,
    enumerate_Q,
    pair_intersection_audit,
    require_general_position,
    sigma_map,
    slanted_audit,
)
from .symbolic import decompose_f, partial_derivative, separability_test, vertex_function

__all__ = ["main", "run_experiment", "build_parser"]

EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INVARIANT = 3

CONSTRUCTIONS = ("lattice", "three-parallel", "one-parallel", "general", "convex-grid", "random")
_DEFAULT_ALPHA = {"three-parallel": "2", "general": "1"}


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _scalar_arg(text: str):
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad scalar {text!r}: {exc}")


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="FILE", help="also write the JSON report here")
    common.add_argument("--threads", type=_positive_int, default=1)
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="unitarea", description="Unit-area triangle experiments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", parents=[common], help="write a point set")
    g.add_argument("--construction", choices=CONSTRUCTIONS, required=True)
    g.add_argument("--n", type=_positive_int)
    g.add_argument("--alpha", type=_scalar_arg)
    g.add_argument("--coord-bound", type=_positive_int, default=1000)
    g.add_argument("--distinct-coordinates", action="store_true",
                   help="random points never share an x or a y value")
    g.add_argument("--a", metavar="FILE", help="convex set file for convex-grid")
    g.add_argument("--b", metavar="FILE", help="convex set file for convex-grid")
    g.add_argument("--out", required=True)

    c = sub.add_parser("count", parents=[common], help="count unit-area triangles")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--method", choices=("brute", "bucket", "both"), default="both")

    a = sub.add_parser("audit", help="surface and separability audits")
    asub = a.add_subparsers(dest="audit", required=True, parser_class=_Parser)
    s = asub.add_parser("surfaces", parents=[common])
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--k", type=_positive_int, default=2)
    s.add_argument("--cap", type=_positive_int)
    sep = asub.add_parser("separability", parents=[common])
    sep.add_argument("--alpha", type=_scalar_arg, required=True)

    gs = sub.add_parser("gridstats", parents=[common], help="convex grid statistics")
    gs.add_argument("--a", metavar="FILE", required=True)
    gs.add_argument("--b", metavar="FILE", help="defaults to --a")
    gs.add_argument("--k", type=_positive_int, help="default round(n^(9/28)), n = |A||B|")
    gs.add_argument("--csv", metavar="FILE")

    sc = sub.add_parser("scaling", parents=[common], help="log-log slope of counts")
    sc.add_argument("--construction", choices=CONSTRUCTIONS, required=True)
    sc.add_argument("--ns", type=_int_list, default=[4, 8, 16, 32])
    sc.add_argument("--alpha", type=_scalar_arg)
    sc.add_argument("--coord-bound", type=_positive_int, default=1000)
    sc.add_argument("--csv", metavar="FILE")
    return p


# ---------------------------------------------------------------------------
# input helpers


def read_scalar_set(path: str) -> ConvexSet:
    """One scalar per line; blank lines and ``#`` comments ignored."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    vals = []
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            vals.append(parse_scalar(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from exc
    return ConvexSet(vals)


def _load_points(path: str):
    try:
        return read_pts(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _fmt(v):
    if isinstance(v, Fraction) or hasattr(v, "tower"):
        return format_scalar(v)
    return v


def _make_points(construction: str, n: Optional[int], alpha, seed: int, coord_bound: int,
                 a_file: Optional[str] = None, b_file: Optional[str] = None,
                 distinct: bool = False):
    if construction != "convex-grid" and n is None:
        raise UsageError(f"--n is required for {construction}")
    if alpha is None and construction in _DEFAULT_ALPHA:
        alpha = parse_scalar(_DEFAULT_ALPHA[construction])
    if construction == "lattice":
        return lattice_section(n), alpha
    if construction == "three-parallel":
        return three_parallel(n, alpha), alpha
    if construction == "one-parallel":
        return one_parallel_pair(n), None
    if construction == "general":
        return general_position(n, alpha), alpha
    if construction == "random":
        return random_point_set(n, seed, coord_bound, distinct_coordinates=distinct), None
    a = read_scalar_set(a_file) if a_file else squares(n or 4)
    b = read_scalar_set(b_file) if b_file else a
    return convex_grid(a, b), None


# ---------------------------------------------------------------------------
# subcommands


def _cmd_generate(args) -> ExperimentResult:
    t0 = time.perf_counter()
    s, alpha = _make_points(args.construction, args.n, args.alpha, args.seed,
                            args.coord_bound, args.a, args.b, args.distinct_coordinates)
    write_pts(s, args.out, comment=f"construction: {args.construction}")
    sizes = {"points": len(s)}
    if s.parts is not None:
        sizes.update({f"part{k}": len(s.part(k)) for k in (1, 2, 3)})
    return ExperimentResult(
        "generate",
        params={"construction": args.construction, "n": args.n, "alpha": _fmt(alpha),
                "seed": args.seed, "out": args.out},
        audits=sizes,
        elapsed_ms=(time.perf_counter() - t0) * 1000,
    )


def _cmd_count(args) -> ExperimentResult:
    s = _load_points(args.infile)
    t0 = time.perf_counter()
    results = {}
    if args.method in ("brute", "both"):
        results["brute"] = count_brute_force(s, threads=args.threads)
    if args.method in ("bucket", "both"):
        results["bucket"] = count_line_bucket(s, threads=args.threads)
    if len(results) == 2:
        b, k = results["brute"], results["bucket"]
        if (b.total, b.restricted) != (k.total, k.restricted):
            raise InvariantError(
                f"brute force ({b.total}, {b.restricted}) and line bucket "
                f"({k.total}, {k.restricted}) disagree"
            )
    first = next(iter(results.values()))
    return ExperimentResult(
        "count",
        params={"in": args.infile, "method": args.method, "n": len(s)},
        total=first.total,
        restricted=first.restricted,
        audits={"methods_agree": True} if len(results) == 2 else {},
        elapsed_ms=(time.perf_counter() - t0) * 1000,
    )


def _cmd_audit_surfaces(args) -> ExperimentResult:
    s = _load_points(args.infile)
    require_general_position(s)
    t0 = time.perf_counter()
    pts = s.points
    surfaces = [SigmaSurface(p, q) for p in pts for q in pts if p != q]
    pairs = list(combinations(surfaces, 2))

    def worst_in(chunk):
        return max((pair_intersection_audit(a, b, pts)[0] for a, b in chunk), default=0)

    step = -(-len(pairs) // args.threads) or 1
    chunks = [pairs[i:i + step] for i in range(0, len(pairs), step)]
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        worst = max(pool.map(worst_in, chunks), default=0)
    slanted_failures = sum(len(slanted_audit(sf, pts).failures) for sf in surfaces)
    mismatches = sum(
        1 for sf in surfaces for u in pts if u != sf.p
        and apply_projective(sf.matrix, u) != sigma_map(sf, u)
    )
    clashes = len(distinct_surface_audit(surfaces))
    quads = enumerate_Q(s, args.k, args.cap)
    audits = {
        "surfaces": len(surfaces),
        "max_pair_intersection": worst,
        "slanted_failures": slanted_failures,
        "projective_mismatches": mismatches,
        "coinciding_surfaces": clashes,
        "quadruples": len(quads),
        "cap": quads.cap,
    }
    result = ExperimentResult(
        "audit surfaces",
        params={"in": args.infile, "k": args.k, "cap": quads.cap, "n": len(s)},
        audits=audits,
        elapsed_ms=(time.perf_counter() - t0) * 1000,
    )
    if worst > 3 or slanted_failures or mismatches or clashes:
        result.audits["violation"] = True
        raise _AuditFailure(result)
    return result


class _AuditFailure(Exception):
    def __init__(self, result: ExperimentResult):
        super().__init__("surface audit found a violation")
        self.result = result


def _cmd_audit_separability(args) -> ExperimentResult:
    t0 = time.perf_counter()
    f = vertex_function(args.alpha)
    q = partial_derivative(f, "x") / partial_derivative(f, "y")
    separable = separability_test(q)
    dec = decompose_f(args.alpha)
    audits = {"separable": separable, "identity_verified": True}
    audits.update(dec.report())
    return ExperimentResult(
        "audit separability",
        params={"alpha": _fmt(args.alpha)},
        audits=audits,
        elapsed_ms=(time.perf_counter() - t0) * 1000,
    )


def _cmd_gridstats(args) -> ExperimentResult:
    a = read_scalar_set(args.a)
    b = read_scalar_set(args.b) if args.b else a
    n = len(a) * len(b)
    k = args.k if args.k is not None else max(1, round(n ** (9 / 28)))
    t0 = time.perf_counter()
    wa, wb = MultiplicityTable(a), MultiplicityTable(b)
    census_a = rich_point_census(a, k, wa)
    census_b = rich_point_census(b, k, wb)
    delta = delta_histogram(a, a)
    part = rich_poor_partition(a, b, k)
    audits = {
        "rich_points_a": census_a.count,
        "rich_points_b": census_b.count,
        "dyadic_a": {str(i): c for i, c in census_a.histogram.items()},
        "dyadic_b": {str(i): c for i, c in census_b.histogram.items()},
        "delta_sum": delta.total,
        "delta_symmetric": all(delta[-s] == c for s, c in delta.counts.items()),
    }
    if args.csv:
        _write_gridstats_csv(args.csv, wa, wb, delta, part)
    return ExperimentResult(
        "gridstats",
        params={"a": args.a, "b": args.b or args.a, "k": k, "n": n},
        total=part.total,
        classes=part.as_dict(),
        audits=audits,
        elapsed_ms=(time.perf_counter() - t0) * 1000,
    )


def _write_gridstats_csv(path, wa, wb, delta, part) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["table", "key", "value"])
        for name, table in (("multiplicity_a", wa), ("multiplicity_b", wb)):
            for mult, count in table.by_multiplicity().items():
                w.writerow([name, mult, count])
        for s, count in delta.counts.items():
            w.writerow(["delta_aa", format_scalar(s), count])
        for name, count in part.as_dict().items():
            w.writerow(["classes", name, count])


def _cmd_scaling(args) -> ExperimentResult:
    if sorted(set(args.ns)) != args.ns:
        raise UsageError("--ns must be strictly increasing")
    t_all = time.perf_counter()
    rows = []
    for n in args.ns:
        s, alpha = _make_points(args.construction, n, args.alpha, args.seed, args.coord_bound)
        t0 = time.perf_counter()
        c = count_brute_force(s, threads=args.threads)
        rows.append((n, c.total, c.restricted, (time.perf_counter() - t0) * 1000))
    fit_on = [r[2] if r[2] is not None else r[1] for r in rows]
    slope = scaling_fit(ScalingSeries(tuple(zip(args.ns, fit_on))))
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "count_total", "count_restricted", "elapsed_ms"])
            for n, tot, res, ms in rows:
                w.writerow([n, tot, "" if res is None else res, f"{ms:.3f}"])
    return ExperimentResult(
        "scaling",
        params={"construction": args.construction, "ns": args.ns, "alpha": _fmt(alpha),
                "seed": args.seed},
        total=rows[-1][1],
        restricted=rows[-1][2],
        audits={"series": [{"n": n, "total": t, "restricted": r} for n, t, r, _ in rows],
                "fit_on": "restricted" if rows[-1][2] is not None else "total"},
        slope=slope,
        elapsed_ms=(time.perf_counter() - t_all) * 1000,
    )


_DISPATCH = {
    "generate": _cmd_generate,
    "count": _cmd_count,
    "gridstats": _cmd_gridstats,
    "scaling": _cmd_scaling,
}


def _emit(result: ExperimentResult, report: Optional[str]) -> None:
    text = json.dumps(result.to_json_dict(), sort_keys=True, indent=2)
    print(text)
    if report:
        with open(report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "audit":
        handler = _cmd_audit_surfaces if args.audit == "surfaces" else _cmd_audit_separability
    else:
        handler = _DISPATCH[args.command]
    try:
        result = handler(args)
    except UsageError as exc:
        print(f"unitarea: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _AuditFailure as exc:
        _emit(exc.result, args.report)
        print(f"unitarea: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except InvariantError as exc:
        print(f"unitarea: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, PtsFormatError, ConvexityError, DuplicateLinesError,
            GeneralPositionError, OSError, ValueError, ZeroDivisionError) as exc:
        print(f"unitarea: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(result, args.report)
    return 0


run_experiment = main
