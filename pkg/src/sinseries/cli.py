"""
Command-line front end.

    sinseries triangle --kind ballot --n 13
    sinseries integral --kind odd --n 1 --verify --tol 1e-10
    sinseries theorem --id 2 --terms 4000 --extrapolate --csv
    sinseries series-sec2 --terms 2000 --extrapolate
    sinseries verify --suite integrals

Exit codes: 0 success, 2 verification failure, 64 usage error. Output is
fully determined by the flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import sweeps, transforms, triangles
from .specfun import DomainError

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _add_format(p: argparse.ArgumentParser, choices=("text", "json", "csv")) -> None:
    p.add_argument("--format", choices=choices, default="text")
    if "json" in choices:
        p.add_argument("--json", dest="format", action="store_const", const="json")
    if "csv" in choices:
        p.add_argument("--csv", dest="format", action="store_const", const="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sinseries", description="Binomial / sine-integral double series toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("triangle", help="dump an exact coefficient row")
    p.add_argument("--kind", required=True, choices=("ballot", "invsq", "odd", "even", "log"))
    p.add_argument("--n", type=int, required=True)
    _add_format(p, ("text", "json"))

    p = sub.add_parser("integral", help="closed-form definite integral over [0, 1]")
    p.add_argument("--kind", required=True, choices=tuple(sweeps.INTEGRALS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="compare with adaptive quadrature")
    p.add_argument("--tol", type=float, default=1e-9)
    _add_format(p, ("text", "json"))

    for name, helptext in (("theorem", "evaluate a double-series theorem"), ("series-sec2", "series from x/(arcsin x)^2")):
        p = sub.add_parser(name, help=helptext)
        if name == "theorem":
            p.add_argument("--id", type=int, required=True, choices=transforms.THEOREMS)
        p.add_argument("--terms", type=int, required=True)
        p.add_argument("--extrapolate", action="store_true")
        p.add_argument("--plain-sum", action="store_true", help="uncompensated left-to-right summation")
        p.add_argument("--chunk", type=int, default=64, help="outer terms per parallel task")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--allow-large", action="store_true", help=f"permit --terms above {transforms.J_MAX}")
        _add_format(p)

    p = sub.add_parser("verify", help="run an oracle sweep")
    p.add_argument("--suite", required=True, choices=tuple(sweeps.SUITES))
    p.add_argument("--tol", type=float, default=None)
    _add_format(p, ("text", "json"))
    return parser


def _triangle(args, out) -> int:
    if args.kind == "ballot":
        if args.n < 0:
            raise DomainError("--n must be >= 0")
        payload = {
            "kind": "ballot",
            "n": args.n,
            "scale_log2": 0,
            "entries": [[k, triangles.ballot_coefficient(args.n, k)] for k in range(args.n // 2 + 1)],
        }
    else:
        payload = triangles.ROW_BUILDERS[args.kind](args.n).to_json()
    if args.format == "json":
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(f"{payload['kind']} n={payload['n']} scale=2^{payload['scale_log2']}\n")
        for m, c in payload["entries"]:
            out.write(f"{m}\t{c}\n")
    return EXIT_OK


def _integral(args, out) -> int:
    value = sweeps.INTEGRALS[args.kind][0](args.n).value
    payload = {"op": f"integral_{args.kind}", "n": args.n, "value": value}
    code = EXIT_OK
    if args.verify:
        _, ref, diff = sweeps.integral_check(args.kind, args.n, args.tol)
        payload.update(oracle_value=ref, abs_diff=diff)
        if not diff <= args.tol:
            code = EXIT_VERIFY
    if args.format == "json":
        out.write(json.dumps(payload) + "\n")
    else:
        out.write("\n".join(f"{k}: {fmt(v)}" for k, v in payload.items()) + "\n")
        if args.verify:
            out.write(f"verify: {'PASS' if code == EXIT_OK else 'FAIL'} (tol {fmt(args.tol)})\n")
    return code


CSV_COLUMNS = ("J", "partial_sum", "raw_error", "extrapolated_value", "extrapolated_error")


def _schedule(J: int) -> list[int]:
    budgets = [J]
    while budgets[-1] // 2 >= 8:
        budgets.append(budgets[-1] // 2)
    return sorted(budgets)


def _series(args, out) -> int:
    target = args.id if args.command == "theorem" else "sec2"
    options = dict(compensated=not args.plain_sum, extrapolate=args.extrapolate, parallel_chunk=args.chunk,
                   workers=args.workers, allow_large=args.allow_large)
    if args.format == "csv":
        reports = transforms.convergence_table(target, _schedule(args.terms), **options)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in reports:
            writer.writerow([r.terms_used, fmt(r.partial_sum), fmt(r.raw_error), fmt(r.extrapolated_value),
                             fmt(r.extrapolated_error)])
        out.write(buf.getvalue())
        return EXIT_OK
    (report,) = transforms.convergence_table(target, [args.terms], **options)
    if args.format == "json":
        out.write(json.dumps(report.to_dict()) + "\n")
    else:
        for key, value in report.to_dict().items():
            out.write(f"{key}: {fmt(value)}\n")
    return EXIT_OK


def _verify(args, out) -> int:
    suite = sweeps.SUITES[args.suite]
    checks = suite() if args.tol is None or args.suite == "rows" else suite(args.tol)
    if args.format == "json":
        out.write(json.dumps([{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]) + "\n")
    else:
        for c in checks:
            out.write(f"{'PASS' if c.ok else 'FAIL'}  {c.name}  {c.detail}\n")
    return EXIT_OK if all(c.ok for c in checks) else EXIT_VERIFY


HANDLERS = {
    "triangle": _triangle,
    "integral": _integral,
    "theorem": _series,
    "series-sec2": _series,
    "verify": _verify,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return HANDLERS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        err.write(f"sinseries: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
