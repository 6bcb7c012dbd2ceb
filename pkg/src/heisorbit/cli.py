"""Command-line front end.

    heisorbit classify --input f.json
    heisorbit reduce --input - < tuple.json
    heisorbit verify --suite all --n 2 --seed 42 --out report.json

Every command reads and writes one UTF-8 JSON document. Exit codes: 0 on
success, 1 when a verification check fails (the report is still written),
2 for malformed input, dimension mismatches, matrices outside ghat and
unknown suites.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import scalars as sc
from .orbits import NotInAlgebraError, classify_dual, reduce_tuple, verify_normalizer
from .scalars import DimensionError
from .serialize import InputError, cotype_to_json, dual_from_json, orbit_to_json, tuple_from_json
from .verify import ALL, DEFAULT_GRID, DEFAULT_N, DEFAULT_SEED, SUITES, UnknownSuiteError, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


class UsageError(Exception):
    """Raised instead of argparse's own exit so every usage error maps to code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def report_schema():
    """The published JSON schema of verify reports."""
    text = resources.files("heisorbit").joinpath("schemas/verify_report.schema.json").read_text("utf-8")
    return json.loads(text)


def dumps(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False)


def _read_json(source):
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def _parse_grid(text):
    try:
        n_text, l_text = text.split(",")
        N, L = int(n_text), float(l_text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,L (e.g. 2048,8), got {text!r}") from None
    if N < 1 or N & (N - 1) or L <= 0:
        raise argparse.ArgumentTypeError("N must be a power of two and L positive")
    return N, L


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("value must be positive")
    return value


def _nonnegative_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value >= 0:
        raise argparse.ArgumentTypeError("tolerance must be nonnegative")
    return value


def build_parser():
    parser = _Parser(prog="heisorbit", description="Heisenberg coadjoint orbits: classify, reduce, verify.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="classify a dual element {n, lam, mu}")
    p.add_argument("--input", default="-", help="JSON file, or - for stdin")

    p = sub.add_parser("reduce", help="reduce a tuple {n, zeta, d, xi} or {n, matrix}")
    p.add_argument("--input", default="-", help="JSON file, or - for stdin")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES + (ALL,))}")
    p.add_argument("--n", type=_positive_int, default=DEFAULT_N)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--trials", type=_positive_int, default=None, help="instances per check (default 1000; 20 for quantization)")
    p.add_argument("--tol", type=_nonnegative_float, default=None, help="float-mode tolerance for the algebraic suites")
    p.add_argument("--grid", type=_parse_grid, default=DEFAULT_GRID, help="quantization grid as N,L")
    p.add_argument("--workers", type=_positive_int, default=1, help="run suites concurrently")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    return parser


def cmd_classify(args):
    doc = _read_json(args.input)
    f = dual_from_json(doc)
    desc = classify_dual(f)
    verified = None
    if desc.normalizer is not None:
        tol = None if f.lam.mode == sc.EXACT else sc.DEFAULT_FLOAT_TOL
        verified = verify_normalizer(f, desc, tol)
    out = {"n": f.n, "mode": f.lam.mode, **orbit_to_json(desc, verified)}
    print(dumps(out))
    return EXIT_OK


def cmd_reduce(args):
    doc = _read_json(args.input)
    t = tuple_from_json(doc)
    w, desc = reduce_tuple(t)
    out = {"n": t.n, "mode": sc.mode_of(t.Y), **cotype_to_json(w, desc)}
    print(dumps(out))
    return EXIT_OK


def cmd_verify(args):
    mode = sc.env_mode(sc.EXACT)
    report = run_suite(args.suite, args.n, args.trials, args.seed, mode, args.tol, args.grid, args.workers)
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK if report["pass"] else EXIT_CHECK_FAILED


COMMANDS = {"classify": cmd_classify, "reduce": cmd_reduce, "verify": cmd_verify}


def _fail(message, **extra):
    print(dumps({"error": message, **extra}), file=sys.stderr)
    return EXIT_BAD_INPUT


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail(f"usage: {exc}")
    try:
        return COMMANDS[args.command](args)
    except NotInAlgebraError as exc:
        return _fail(str(exc), predicate=exc.predicate)
    except (InputError, DimensionError, UnknownSuiteError) as exc:
        return _fail(str(exc))
    except ValueError as exc:
        # HEIS_MODE typos and constructor validation errors
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
