"""Command-line entry point: ``moduli-count <subcommand> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 invalid arguments,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

from .errors import BudgetExceeded, ModuliCountError
from .formulas import formula_key
from .gf import supported_field
from .jsonfmt import dumps
from .orbits import orbit_census
from .registry import DEFAULT, FormulaKey, FStratum, Kind, Space
from .mat2 import Mat2
from .stratify import STRATA, Stratum, census, classify
from .verify import DEFAULT_GRID, EXTENDED_GRID, run_verification
from .zeta import ZetaSpace, functional_equation_check, verify_counts, zeta_factorization, zeta_report

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _workers_default() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # pragma: no cover
        return os.cpu_count() or 1


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="moduli-count",
        description="Point counts, orbit counts and closed forms for 2x2 matrix tuples over F_q.",
    )
    ap.add_argument("--no-timings", action="store_true", help="report elapsed_ms as 0")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="count tuples per stratum")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--workers", type=_positive, default=None)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")

    p = sub.add_parser("orbits", help="count PGL_2(F_q)-orbits per stratum")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--workers", type=_positive, default=1)

    p = sub.add_parser("classify", help="stratum of one tuple")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--tuple", required=True, help="4m comma-separated element indices, matrix-major")

    p = sub.add_parser("formulas", help="list every closed form at one m")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("vhp", help="virtual Hodge polynomial")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--stratum", default=None)
    p.add_argument("--space", choices=("rep", "ch"), default="rep")
    p.add_argument("--variant", choices=("c", "ordinary"), default="c")

    p = sub.add_parser("zeta", help="Weil zeta factorization and checks")
    p.add_argument("--space", choices=[s.value for s in ZetaSpace], required=True)
    p.add_argument("--m", type=_positive, required=True)

    p = sub.add_parser("verify", help="run the verification grid")
    p.add_argument("--grid", choices=("default", "extended"), default="default")
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--workers", type=_positive, default=None)
    p.add_argument("--format", choices=("json", "text"), default="text")
    # testing aid: KIND:SPACE:STRATUM:TERM:DELTA shifts one stored coefficient
    p.add_argument("--inject-fault", action="append", default=[], help=argparse.SUPPRESS)
    return ap


def _cmd_census(args, out) -> int:
    c = census(args.q, args.m, workers=args.workers or _workers_default())
    if args.no_timings:
        c.elapsed_ms = 0
    if args.format == "json":
        print(dumps(c.to_dict()), file=out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(c.CSV_HEADER)
        w.writerow(c.csv_row())
    else:
        rows = [(s.value, c.counts[s]) for s in STRATA] + [("total", c.total)]
        width = max(len(str(v)) for _, v in rows)
        print(f"q={c.q} m={c.m}", file=out)
        for name, v in rows:
            print(f"  {name:<6} {v:>{width}}", file=out)
    return EXIT_OK


def _cmd_orbits(args, out) -> int:
    o = orbit_census(args.q, args.m, workers=args.workers)
    if args.no_timings:
        o.elapsed_ms = 0
    print(dumps(o.to_dict()), file=out)
    return EXIT_OK


def _cmd_classify(args, out) -> int:
    spec = supported_field(args.q)
    try:
        entries = [int(t) for t in args.tuple.replace(" ", "").split(",") if t]
    except ValueError as e:
        raise UsageError(f"bad tuple: {e}") from None
    if not entries or len(entries) % 4:
        raise UsageError("tuple needs a positive multiple of 4 entries")
    if any(not 0 <= e < spec.q for e in entries):
        raise UsageError(f"entries must be element indices in [0, {spec.q})")
    mats = [Mat2.from_indices(spec, entries[i : i + 4]) for i in range(0, len(entries), 4)]
    print(classify(mats).value, file=out)
    return EXIT_OK


def _cmd_formulas(args, out) -> int:
    rows = []
    for key in DEFAULT.keys():
        poly = DEFAULT.evaluate(key, args.m)
        row = {"key": key.label(), "poly": poly.render()}
        if args.q is not None:
            row["value"] = str(poly(args.q))
        rows.append(row)
    if args.format == "json":
        print(dumps({"m": args.m, "q": args.q, "formulas": rows}), file=out)
        return EXIT_OK
    width = max(len(r["key"]) for r in rows)
    for r in rows:
        tail = f"  = {r['value']}" if "value" in r else ""
        print(f"{r['key']:<{width}}  {r['poly']}{tail}", file=out)
    return EXIT_OK


def _cmd_vhp(args, out) -> int:
    kind = Kind.VHPC if args.variant == "c" else Kind.VHP
    if args.stratum:
        try:
            stratum = FStratum(Stratum.parse(args.stratum).value)
        except ValueError:
            try:
                stratum = FStratum(args.stratum.lower())
            except ValueError:
                raise UsageError(f"unknown stratum {args.stratum!r}") from None
        key = FormulaKey(Space(args.space), stratum, kind)
        if not DEFAULT.has(key):
            raise UsageError(f"no formula for {key.label()}")
        print(DEFAULT.evaluate(key, args.m).render(), file=out)
        return EXIT_OK
    for key in DEFAULT.keys():
        if key.kind is kind and key.space is Space(args.space) and not key.general:
            print(f"{key.stratum.value}: {DEFAULT.evaluate(key, args.m).render()}", file=out)
    return EXIT_OK


def _cmd_zeta(args, out) -> int:
    space = ZetaSpace(args.space)
    report = zeta_report(space, args.m)
    counts_ok = verify_counts(zeta_factorization(space, args.m), space, args.m)
    report["counts_check"] = "pass" if counts_ok else "fail"
    if space is not ZetaSpace.CH_TOTAL:
        fe = functional_equation_check(space, args.m)
        report["functional_check"] = "pass" if fe else "fail"
        report["pairing"] = [list(p) for p in fe.pairing]
    print(dumps(report), file=out)
    ok = counts_ok and report.get("functional_check", "pass") == "pass"
    return EXIT_OK if ok else EXIT_MISMATCH


def _parse_fault(text: str):
    try:
        kind, space, stratum, term, delta = text.split(":")
        key = formula_key(space, stratum, kind)
        return key, int(term), int(delta)
    except ValueError as e:
        raise UsageError(f"bad --inject-fault {text!r}: {e}") from None


def _cmd_verify(args, out) -> int:
    registry = DEFAULT
    for spec in args.inject_fault:
        key, term, delta = _parse_fault(spec)
        registry = registry.perturbed(key, term, delta)
    grid = DEFAULT_GRID if args.grid == "default" else EXTENDED_GRID
    report = run_verification(
        grid,
        registry,
        budget_seconds=args.budget_seconds,
        workers=args.workers or _workers_default(),
    )
    if args.format == "json":
        print(dumps(report.to_dict(timings=not args.no_timings)), file=out)
    else:
        for cell in report.cells:
            status = "ok" if not cell.failures else f"FAIL ({len(cell.failures)})"
            t = 0 if args.no_timings else cell.elapsed_ms
            print(f"{cell.name:<10} {cell.checks:>3} checks  {status}  {t} ms", file=out)
        print(f"identities {report.identity_checks} checks", file=out)
        for f in report.failures:
            print(f"MISMATCH {f}", file=out)
        print("overall: " + ("pass" if report.passed else "fail"), file=out)
    return EXIT_OK if report.passed else EXIT_MISMATCH


COMMANDS = {
    "census": _cmd_census,
    "orbits": _cmd_orbits,
    "classify": _cmd_classify,
    "formulas": _cmd_formulas,
    "vhp": _cmd_vhp,
    "zeta": _cmd_zeta,
    "verify": _cmd_verify,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e} (required {e.required})", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ModuliCountError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
