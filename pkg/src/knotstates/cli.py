"""Command-line entry point: ``knotstates <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 crossing
guard violation.
"""
from __future__ import annotations

import argparse
import sys

from .algebra import format_poly
from .diagram import GUARD_ENV, HARD_CAP, TooManyCrossings, crossing_guard, state_sum
from .expr import ExprError, eval_poly, parse
from .families import CATALOG, FamilySpec, UnsupportedSpec, build, crossing_count
from .formulas import family_gf, family_poly_closed, family_poly_recurrence
from .tables import (
    REFERENCE_IDS,
    RecurrenceMismatch,
    compare_with_reference,
    export,
    load_registry,
    oeis_checks,
    triangle,
    verify_formula_entry,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _family_arg(value: str) -> str:
    if value not in CATALOG:
        raise argparse.ArgumentTypeError(
            f"unknown family {value!r}; choose from {', '.join(CATALOG)}"
        )
    return value


def _nonneg(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="knotstates",
        description="State-sum polynomials of knot shadows.",
        epilog=f"The brute-force crossing limit comes from --guard, else ${GUARD_ENV}, "
        f"else 30; it may not exceed {HARD_CAP}.",
    )
    p.add_argument("--guard", type=int, help="crossing limit for brute force")
    p.add_argument("--workers", type=_nonneg, default=1, help="threads for brute force")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("poly", help="print one polynomial")
    s.add_argument("--family", type=_family_arg, required=True)
    s.add_argument("--n", type=_nonneg, required=True)
    s.add_argument("--method", choices=("brute", "closed", "recurrence"), default="closed")

    for name, formats, default in (
        ("table", ("csv", "json", "md"), "md"),
        ("export", ("bfile", "csv"), "bfile"),
    ):
        s = sub.add_parser(name, help=f"{name} a coefficient triangle")
        s.add_argument("--family", required=True)
        s.add_argument("--rows", type=_nonneg, required=True, help="number of rows")
        s.add_argument("--start", type=_nonneg, default=0, help="first row index")
        s.add_argument("--format", choices=formats, default=default)
        if name == "export":
            s.add_argument("--out", help="write to this file instead of stdout")

    s = sub.add_parser("check", help="brute force vs closed form vs recurrence")
    s.add_argument("--family", default="all")
    s.add_argument("--max-crossings", type=_nonneg, default=12)

    s = sub.add_parser("series", help="generating-function terms")
    s.add_argument("--family", type=_family_arg, required=True)
    s.add_argument("--order", type=_nonneg, required=True)

    s = sub.add_parser("eval", help="evaluate a knot expression")
    s.add_argument("--expr", required=True)
    s.add_argument("--method", choices=("brute", "laws"), default="laws")

    s = sub.add_parser("fixtures", help="compare embedded reference tables")
    s.add_argument("--verify", action="store_true", required=True)
    return p


def _poly(args, out) -> int:
    spec = FamilySpec(args.family, args.n)
    if args.method == "brute":
        limit = crossing_guard(args.guard)
        if crossing_count(spec) > limit:
            raise TooManyCrossings(f"{crossing_count(spec)} crossings exceeds guard {limit}")
        p = state_sum(build(spec), guard=limit, workers=args.workers)
    elif args.method == "recurrence":
        p = family_poly_recurrence(spec)
    else:
        p = family_poly_closed(spec)
    out.write(format_poly(p) + "\n")
    return EXIT_OK


def _triangle_bytes(args) -> bytes:
    if args.rows == 0:
        raise UsageError("--rows must be at least 1")
    tri = triangle(args.family, args.start + args.rows - 1)
    return export(tri.select(args.start, args.start + args.rows - 1), args.format)


def _table(args, out) -> int:
    out.write(_triangle_bytes(args).decode("utf-8"))
    return EXIT_OK


def _export(args, out) -> int:
    data = _triangle_bytes(args)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        out.write(data.decode("utf-8"))
    return EXIT_OK


def _check(args, out) -> int:
    limit = crossing_guard(args.guard)
    if args.max_crossings > limit:
        raise TooManyCrossings(f"--max-crossings {args.max_crossings} exceeds guard {limit}")
    names = list(CATALOG) if args.family == "all" else [_family_arg_or_usage(args.family)]
    failures = 0
    for name in names:
        n = 0
        while True:
            spec = FamilySpec(name, n)
            m = crossing_count(spec)
            if m > args.max_crossings or (m == 0 and n > 0):
                break
            brute = state_sum(build(spec), guard=limit, workers=args.workers)
            ok = brute == family_poly_closed(spec) == family_poly_recurrence(spec)
            failures += not ok
            out.write(f"{name} n={n} crossings={m} {'ok' if ok else 'FAIL'}\n")
            n += 1
    out.write(f"{'all passed' if not failures else f'{failures} failed'}\n")
    return EXIT_OK if not failures else EXIT_FAIL


def _family_arg_or_usage(name: str) -> str:
    if name not in CATALOG:
        raise UsageError(f"unknown family {name!r}")
    return name


def _series(args, out) -> int:
    s = family_gf(args.family, args.order)
    for n, term in enumerate(s.terms):
        out.write(f"y^{n}: {format_poly(term)}\n")
    return EXIT_OK


def _eval(args, out) -> int:
    p = eval_poly(parse(args.expr), args.method, guard=args.guard, workers=args.workers)
    out.write(format_poly(p) + "\n")
    return EXIT_OK


def _fixtures(args, out) -> int:
    ok = True
    for tid in REFERENCE_IDS:
        try:
            rep = compare_with_reference(tid)
        except RecurrenceMismatch as exc:
            out.write(f"{tid}: FAIL {exc}\n")
            ok = False
            continue
        ok &= rep.passed
        out.write(rep.summary() + "\n")
    for entry in load_registry():
        if entry.kind != "formula":
            continue
        good = verify_formula_entry(entry)
        ok &= good
        out.write(f"formula {entry.table}: {'ok' if good else 'FAIL'} ({entry.printed} -> {entry.derived})\n")
    for seq_id, desc, good in oeis_checks():
        ok &= good
        out.write(f"{seq_id}: {'ok' if good else 'FAIL'} ({desc})\n")
    out.write("fixtures verified\n" if ok else "fixture verification failed\n")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "poly": _poly,
    "table": _table,
    "export": _export,
    "check": _check,
    "series": _series,
    "eval": _eval,
    "fixtures": _fixtures,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.guard is not None:
            crossing_guard(args.guard)
        return COMMANDS[args.command](args, out)
    except TooManyCrossings as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, UnsupportedSpec, ExprError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
