"""Command line entry point: ``jordan-strata <command> [options]``."""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import report as rp
from .solve import DEFAULT_GRID_N, DEFAULT_TOL

COMMANDS = ("bounds", "minimax", "certify", "verify", "plot-data")
GRID_N_RANGE = (64, 2**20)
TOL_MAX = 1e-3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which collides with the certificate code
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _tol(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0 < v <= TOL_MAX:
        raise argparse.ArgumentTypeError(f"--tol must lie in (0, {TOL_MAX}], got {text}")
    return v


def _grid_n(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    lo, hi = GRID_N_RANGE
    if not lo <= v <= hi:
        raise argparse.ArgumentTypeError(f"--grid-n must lie in [{lo}, {hi}], got {text}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _interval(text: str):
    try:
        lo, hi = (Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected two rationals 'lo,hi', got {text!r}")
    if not 0 <= lo < hi:
        raise argparse.ArgumentTypeError(f"need 0 <= lo < hi, got {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=sorted(rp.RENDERERS), default=None,
                        help="output format (default: markdown; csv for plot-data)")
    common.add_argument("--tol", type=_tol, default=DEFAULT_TOL,
                        help=f"root-finding tolerance in (0, {TOL_MAX}]")
    common.add_argument("--grid-n", type=_grid_n, default=DEFAULT_GRID_N,
                        help="uniform scan/sample size")
    common.add_argument("--out", type=Path, default=None, help="write output here, not stdout")
    common.add_argument("--precision", type=_positive_int, default=6,
                        help="significant digits for numbers")

    parser = _Parser(prog="jordan-strata",
                     description="Sharp Jordan-type bounds for sin(x)/x on (0, pi/2).")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    sub.add_parser("bounds", parents=[common],
                   help="sup deviations of the classical and boundary bounds")
    sub.add_parser("minimax", parents=[common],
                   help="minimax members of every family and the critical constants")
    c = sub.add_parser("certify", parents=[common],
                       help="exact polynomial sign certificates")
    c.add_argument("--interval", type=_interval, default=(Fraction(0), Fraction(8, 5)),
                   help="rational interval 'lo,hi' (default 0,8/5)")
    c.add_argument("--negative-control", action="store_true",
                   help="also run a deliberately under-truncated certificate")
    v = sub.add_parser("verify", parents=[common],
                       help="grid checks of the classical and generalized double inequalities")
    v.add_argument("--n", type=_positive_int, default=10_000, help="grid points on (0, pi/2]")
    v.add_argument("--draws", type=_positive_int, default=200,
                   help="random exponent pairs for the generalized inequality")
    v.add_argument("--seed", type=int, default=0)
    sub.add_parser("plot-data", parents=[common], help="curves behind the figures")
    return parser


def run(args: argparse.Namespace) -> rp.Report:
    if args.command == "bounds":
        return rp.build_bounds(args.grid_n, args.tol)
    if args.command == "minimax":
        return rp.build_minimax(args.grid_n, args.tol)
    if args.command == "certify":
        return rp.build_certify(args.interval, args.negative_control)
    if args.command == "verify":
        return rp.build_verify(args.n, args.draws, args.seed)
    if args.command == "plot-data":
        return rp.build_plot_data(args.grid_n, args.tol)
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return rp.EXIT_USAGE

    fmt = args.format or ("csv" if args.command == "plot-data" else "markdown")
    result = run(args)
    text = rp.render(result, fmt, args.precision)
    if args.out is not None:
        try:
            args.out.write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            print(f"jordan-strata: cannot write {args.out}: {exc}", file=sys.stderr)
            return rp.EXIT_USAGE
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the flush at exit
            sys.stdout = open(os.devnull, "w")
    for msg in result.messages:
        print(msg, file=sys.stderr)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
