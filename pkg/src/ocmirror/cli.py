"""Command-line front door: compute, check, and export the package's tables.

Subcommands
-----------

``disk``
    Coefficient table of the equivariant disk potential.
``rhs``
    Coefficient table of the assembled sphere-side series (descendant slice,
    distinguished pairing, variable substitution, exceptional correction).
``check``
    Build both sides independently and compare coefficient-by-coefficient;
    exit 0 on exact equality, 1 otherwise, with a machine-readable report.
``localize``
    Enumerate fixed-locus graph classes at a given degree and marking count,
    with automorphism orders and exact per-class contributions.
``ifunction``
    Coefficient table of one descendant-slice extraction of the surface
    series, in the unsubstituted area variables.
``asymptotics``
    Floating-point large-weight ratio table for the excess component.

All exact values are printed as ``num/den`` strings; series tables iterate
in the kernel's lexicographic monomial order and graph tables in the
deterministic enumeration order, so identical configurations produce
byte-identical output.  Exit codes: 0 success (check passed), 1 check
failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional, Sequence, Tuple

from .asymptotics import NumericParams, ratio_table
from .closed import surface_series_terms, z_coeff
from .correspondence import (
    disk_potential_bessel,
    rational_str,
    rhs_assemble,
    run_check,
)
from .localization import graph_class_rows
from .series import FormalSeries, TruncationWindow

__all__ = ["main"]

# hard caps keeping the graph enumeration interactive (class counts grow
# super-exponentially in the degree)
MAX_LOCALIZE_DEGREE = 3
MAX_LOCALIZE_MARKINGS = 4

F_COLUMNS = ("mu", "q_power", "t0_power", "v_power", "value")
SLICE_COLUMNS = ("t0_power", "q1_power", "q2_power", "v_power", "value")
GRAPH_COLUMNS = ("labels", "edges", "markings", "aut", "contribution")
RATIO_COLUMNS = ("l", "v_l", "N", "ratio", "abs_error")


def _window_from(args: argparse.Namespace) -> TruncationWindow:
    return TruncationWindow(
        max_q=args.max_q,
        max_t=args.max_t,
        max_abs_x=args.max_mu,
        min_v=args.min_v,
        max_v=1,
    )


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _laurent_str(series: FormalSeries) -> str:
    """Canonical string for an exact weight-Laurent scalar, e.g. '-1/2*v^-2'."""
    parts = []
    for m, c in series.items():
        frac = rational_str(c)
        parts.append(frac if m.V == 0 else f"{frac}*v^{m.V}")
    return " + ".join(parts) if parts else "0"


def _f_coefficient_rows(series: FormalSeries) -> List[Tuple[int, int, int, int, str]]:
    return [
        (m.X, m.Q, m.T, m.V, rational_str(c))
        for m, c in series.items()
    ]


def _f_table(series: FormalSeries, fmt: str) -> str:
    rows = _f_coefficient_rows(series)
    if fmt == "json":
        return _json_text(
            [dict(zip(F_COLUMNS, row)) for row in rows]
        )
    return _csv_text(F_COLUMNS, rows)


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (exit code, output text)
# ---------------------------------------------------------------------------


def cmd_disk(args: argparse.Namespace) -> Tuple[int, str]:
    series = disk_potential_bessel(_window_from(args))
    return 0, _f_table(series, args.format)


def cmd_rhs(args: argparse.Namespace) -> Tuple[int, str]:
    series = rhs_assemble(_window_from(args))
    return 0, _f_table(series, args.format)


def cmd_check(args: argparse.Namespace) -> Tuple[int, str]:
    report = run_check(_window_from(args), corrupt_correction=args.corrupt_exc)
    if args.format == "json":
        text = _json_text(report.to_json_dict())
    else:
        text = _csv_text(
            F_COLUMNS,
            [
                (row["X"], row["Q"], row["T"], row["V"], row["value"])
                for row in report.diff_rows()
            ],
        )
    return (0 if report.passed else 1), text


def cmd_localize(args: argparse.Namespace) -> Tuple[int, str]:
    if not 1 <= args.degree <= MAX_LOCALIZE_DEGREE:
        raise ValueError(
            f"degree must lie in [1, {MAX_LOCALIZE_DEGREE}] "
            "(graph classes grow super-exponentially)"
        )
    if not 0 <= args.markings <= MAX_LOCALIZE_MARKINGS:
        raise ValueError(f"markings must lie in [0, {MAX_LOCALIZE_MARKINGS}]")
    table = graph_class_rows(args.markings, args.degree)
    if args.format == "json":
        return 0, _json_text(
            [
                {
                    "labels": list(g.labels),
                    "edges": [[u, v, de] for u, v, de in g.edges],
                    "markings": list(g.markings),
                    "aut": aut,
                    "contribution": _laurent_str(contribution),
                }
                for g, aut, contribution in table
            ]
        )
    rows = [
        (
            "|".join(str(l) for l in g.labels),
            "|".join(f"{u}-{v}:{de}" for u, v, de in g.edges),
            "|".join(str(m) for m in g.markings),
            aut,
            _laurent_str(contribution),
        )
        for g, aut, contribution in table
    ]
    return 0, _csv_text(GRAPH_COLUMNS, rows)


def cmd_ifunction(args: argparse.Namespace) -> Tuple[int, str]:
    window = TruncationWindow(
        max_q=0,
        max_t=args.max_t,
        max_abs_x=0,
        min_v=args.min_v,
        max_v=1,
        min_z=-(2 * args.max_q + args.max_t + 4),
        max_z=2,
        max_q12=args.max_q,
    )
    families = surface_series_terms(window)
    terms = families["excess1"] + families["excess2"] + families["balanced"]
    series = z_coeff(terms, args.zcoeff, window)
    rows = [
        (m.T, m.q1, m.q2, m.V, rational_str(c))
        for m, c in series.items()
    ]
    if args.format == "json":
        return 0, _json_text([dict(zip(SLICE_COLUMNS, row)) for row in rows])
    return 0, _csv_text(SLICE_COLUMNS, rows)


def cmd_asymptotics(args: argparse.Namespace) -> Tuple[int, str]:
    params = NumericParams(q0=args.q0, q1=args.q1, q2=args.q2, z=args.z)
    ls = args.l if args.l else [200]
    rows = ratio_table(params, args.N, ls, component=args.component)
    if args.format == "json":
        return 0, _json_text([dict(zip(RATIO_COLUMNS, row)) for row in rows])
    return 0, _csv_text(RATIO_COLUMNS, [tuple(map(repr, row)) for row in rows])


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _add_window_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--max-q", type=int, default=10, help="square-root-area order cap")
    sub.add_argument("--max-t", type=int, default=4, help="logarithm order cap")
    sub.add_argument("--max-mu", type=int, default=4, help="winding magnitude cap")
    sub.add_argument("--min-v", type=int, default=-8, help="weight-Laurent floor")


def _add_format_flags(sub: argparse.ArgumentParser, default: str) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default=default)
    sub.add_argument("--output", default=None, help="write here instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ocmirror",
        description="Exact disk-potential / sphere-series correspondence tools.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    disk = subs.add_parser("disk", help="disk potential coefficient table")
    _add_window_flags(disk)
    _add_format_flags(disk, "csv")
    disk.set_defaults(handler=cmd_disk)

    rhs = subs.add_parser("rhs", help="assembled sphere-side coefficient table")
    _add_window_flags(rhs)
    _add_format_flags(rhs, "csv")
    rhs.set_defaults(handler=cmd_rhs)

    check = subs.add_parser("check", help="compare both sides exactly")
    _add_window_flags(check)
    _add_format_flags(check, "json")
    check.add_argument(
        "--corrupt-exc",
        action="store_true",
        help="deliberately flip part of the exceptional correction (mutation test)",
    )
    check.set_defaults(handler=cmd_check)

    localize = subs.add_parser("localize", help="fixed-locus graph class table")
    localize.add_argument("--degree", type=int, required=True)
    localize.add_argument("--markings", type=int, default=0)
    _add_format_flags(localize, "csv")
    localize.set_defaults(handler=cmd_localize)

    ifunction = subs.add_parser(
        "ifunction", help="descendant-slice table of the surface series"
    )
    ifunction.add_argument("--zcoeff", type=int, default=2, help="slice index")
    ifunction.add_argument("--max-q", type=int, default=10, help="joint area-order cap")
    ifunction.add_argument("--max-t", type=int, default=4)
    ifunction.add_argument("--min-v", type=int, default=-8)
    _add_format_flags(ifunction, "csv")
    ifunction.set_defaults(handler=cmd_ifunction)

    asym = subs.add_parser("asymptotics", help="large-weight ratio table")
    asym.add_argument("--q0", type=float, default=1.0)
    asym.add_argument("--q1", type=float, default=0.25)
    asym.add_argument("--q2", type=float, default=0.25)
    asym.add_argument("--z", type=float, default=1.0)
    asym.add_argument("--N", type=int, default=1, help="asymptotic order")
    asym.add_argument(
        "--l", type=int, action="append", help="sequence index (repeatable)"
    )
    asym.add_argument("--component", type=int, choices=(1, 2), default=2)
    _add_format_flags(asym, "csv")
    asym.set_defaults(handler=cmd_asymptotics)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = args.handler(args)
    except (ValueError, ArithmeticError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
