"""Command-line entry point: ``ahlab <command> [flags]``.

Exit codes: 0 everything agrees, 1 a disagreement or failed check,
2 usage error, 3 error raised by the math layer.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import classifier, induction, interpolation, secant
from .configurations import HyperplaneData, load_config, random_general, random_on_hyperplane, rational_normal_curve_points
from .errors import AhlabError
from .fields import DEFAULT_FIELD, PrimeField, QQ

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_MATH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    return int(text, 0)


def _field(text: str):
    if text == "rational":
        return QQ
    try:
        return PrimeField(int(text, 0))
    except (ValueError, AhlabError) as exc:
        raise argparse.ArgumentTypeError(f"bad field {text!r}: {exc}")


def _default_seed() -> int:
    env = os.environ.get("AHLAB_SEED")
    if env:
        try:
            return int(env, 0)
        except ValueError:
            pass
    return classifier.DEFAULT_SEED


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=DEFAULT_FIELD, help='prime modulus or "rational"')
    common.add_argument("--seed", type=_int, default=None, help="base seed (default $AHLAB_SEED or 0xA11CE)")
    common.add_argument("--format", choices=("json", "csv", "table"), default=None)
    common.add_argument("--output", "--out", dest="output", default=None, help="write to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=None)
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ahlab", description="Hilbert functions of fat points and double-point classification.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    p = sub.add_parser("hf", parents=[common], help="Hilbert function of one configuration")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--mult", type=int, default=2)
    p.add_argument("--points", help="JSON configuration file")
    p.add_argument("--on-hyperplane", dest="on_hyperplane", help="comma-separated linear form coefficients")
    p.add_argument("--rnc", action="store_true", help="points on the rational normal curve")

    p = sub.add_parser("check", parents=[common], help="verify one (n, d, r) cell")
    for flag in ("--n", "--d", "--r"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--trials", type=int, default=classifier.DEFAULT_TRIALS)

    p = sub.add_parser("sweep", parents=[common], help="verify a grid of cells")
    p.add_argument("--nmin", type=int, default=2)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--dmin", type=int, default=1)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--all-r", dest="all_r", action="store_true", help="every r up to ceil(C(n+d,n)/(n+1)) + 2")
    p.add_argument("--trials", type=int, default=classifier.DEFAULT_TRIALS)

    p = sub.add_parser("tree", parents=[common], help="emit the induction tree for (n, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--check", action="store_true", help="re-check the emitted tree")
    p.add_argument("--trials", type=int, default=classifier.DEFAULT_TRIALS)

    p = sub.add_parser("tables", parents=[common], help="regenerate the split tables")
    p.add_argument("--d", type=int, choices=(4, 5), required=True)

    p = sub.add_parser("secant", parents=[common], help="secant variety dimension")
    for flag in ("--n", "--d", "--r"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--trials", type=int, default=classifier.DEFAULT_TRIALS)

    p = sub.add_parser("waring", parents=[common], help="big Waring number G(n, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--trials", type=int, default=classifier.DEFAULT_TRIALS)

    p = sub.add_parser("certificate", parents=[common], help="deficiency certificate")
    p.add_argument("--family", required=True, choices=(classifier.D2_STAR, classifier.D4_QUADRIC_SQUARE, classifier.D3_N4_CUBIC))
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    return parser


# Rendering


def _table(data) -> str:
    if isinstance(data, list):
        if not data:
            return ""
        widths = [max(len(str(row[i])) for row in data) for i in range(len(data[0]))]
        return "\n".join("  ".join(str(x).rjust(w) for x, w in zip(row, widths)) for row in data) + "\n"
    width = max(len(k) for k in data)
    lines = []
    for key, value in data.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key.ljust(width)}  {value}")
    return "\n".join(lines) + "\n"


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _render(data, fmt: str, rows=None) -> str:
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        if rows is None:
            rows = [list(data.keys()), [json.dumps(v) if isinstance(v, (dict, list)) else v for v in data.values()]]
        return _csv(rows)
    return _table(rows if rows is not None else data)


def _emit(text: str, output) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# Commands


def _hf_config(args):
    field = args.field
    sources = [bool(args.points), bool(args.on_hyperplane), bool(args.rnc)]
    if sum(sources) > 1:
        raise UsageError("choose at most one of --points, --on-hyperplane, --rnc")
    if args.points:
        return load_config(args.points)
    if args.n is None or args.r is None:
        raise UsageError("--n and --r are required unless --points is given")
    if args.on_hyperplane:
        try:
            coeffs = tuple(field(c) for c in args.on_hyperplane.split(","))
        except ValueError as exc:
            raise UsageError(f"bad hyperplane: {exc}")
        if len(coeffs) != args.n + 1:
            raise UsageError(f"the hyperplane needs {args.n + 1} coefficients")
        return random_on_hyperplane(args.n, args.r, args.mult, HyperplaneData(coeffs), args.seed, field)
    if args.rnc:
        return rational_normal_curve_points(args.n, args.r, args.mult, args.seed, field)
    return random_general(args.n, args.r, args.mult, args.seed, field)


def cmd_hf(args) -> tuple:
    report = interpolation.hilbert_function(_hf_config(args), args.d)
    return report.to_json(), None, EXIT_OK


def cmd_check(args) -> tuple:
    verdict = classifier.verify_ah(args.n, args.d, args.r, args.trials, args.seed, args.field)
    data = verdict.to_json()
    if args.format != "json":
        data.pop("certificate", None)
    return data, None, EXIT_OK if verdict.agreement else EXIT_DISAGREE


def cmd_sweep(args) -> tuple:
    verdicts = classifier.sweep(
        range(args.nmin, args.nmax + 1),
        range(args.dmin, args.dmax + 1),
        "all" if args.all_r else "pivotal",
        args.trials,
        args.seed,
        args.field,
        args.jobs,
    )
    summary = classifier.sweep_summary(verdicts)
    rows = [list(classifier.SWEEP_COLUMNS)] + [v.csv_row() for v in verdicts]
    data = {"schema": 1, "summary": summary, "rows": [dict(zip(classifier.SWEEP_COLUMNS, r)) for r in rows[1:]]}
    for line in (f"{k}: {v}" for k, v in summary.items()):
        print(line, file=sys.stderr)
    return data, rows, EXIT_OK if summary["disagreements"] == 0 else EXIT_DISAGREE


def cmd_tree(args) -> tuple:
    tree = induction.build_tree(args.n, args.d, args.trials, args.seed, args.field)
    data = tree.to_json()
    code = EXIT_OK
    if args.check:
        report = induction.check_tree(tree, args.trials, args.seed, args.field)
        data = {"tree": data, "check": report.to_json()}
        code = EXIT_OK if report.passed else EXIT_DISAGREE
    return data, None, code


def cmd_tables(args) -> tuple:
    rows = induction.reproduce_tables(args.d)
    match = induction.tables_match(args.d)
    data = {"schema": 1, "d": args.d, "columns": list(induction.TABLE_COLUMNS), "rows": [list(r) for r in rows],
            "matches_reference": match}
    table_rows = [list(induction.TABLE_COLUMNS)] + [list(r) for r in rows]
    return data, table_rows, EXIT_OK if match else EXIT_DISAGREE


def cmd_secant(args) -> tuple:
    return secant.secant_dimension(args.n, args.d, args.r, args.trials, args.seed, args.field).to_json(), None, EXIT_OK


def cmd_waring(args) -> tuple:
    return secant.waring_G(args.n, args.d, args.trials, args.seed, args.field).to_json(), None, EXIT_OK


def cmd_certificate(args) -> tuple:
    family = args.family
    if family == classifier.D2_STAR:
        if args.n is None or args.r is None:
            raise UsageError("D2Star needs --n and --r")
        cert = classifier.certificate_d2(args.n, args.r, args.field)
    elif family == classifier.D4_QUADRIC_SQUARE:
        if args.n is None:
            raise UsageError("D4QuadricSquare needs --n")
        cert = classifier.certificate_d4(args.n, args.r, args.seed, args.field)
    else:
        cert = classifier.certificate_d3n4(args.seed, args.field)
    data = cert.to_json()
    return data, None, EXIT_OK if all(data["checks"].values()) else EXIT_DISAGREE


COMMANDS = {
    "hf": cmd_hf,
    "check": cmd_check,
    "sweep": cmd_sweep,
    "tree": cmd_tree,
    "tables": cmd_tables,
    "secant": cmd_secant,
    "waring": cmd_waring,
    "certificate": cmd_certificate,
}

DEFAULT_FORMATS = {"sweep": "csv", "tree": "json", "certificate": "json"}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.seed is None:
        args.seed = _default_seed()
    fmt = args.format or DEFAULT_FORMATS.get(args.command, "table")
    try:
        data, rows, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ahlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AhlabError, ValueError, OSError) as exc:
        print(f"ahlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    if fmt == "table" and isinstance(data, dict) and args.command in ("tree", "certificate"):
        fmt = "json"  # nested data has no sensible flat table
    _emit(_render(data, fmt, rows), args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
