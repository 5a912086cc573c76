"""Command-line front end: coeffs, verify, scan, fit, list-identities.

Exit codes: 0 success, 2 mathematical disagreement, 64 usage error,
65 unknown identity, 66 insufficient order.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import identities
from .macmahon import A_VALUES, ROUTES, MacParams, UnsupportedA, route_series, scan_congruence_1mod3_mod3, scan_congruence_2mod3
from .quasimodular import EisensteinId, Infeasible, InsufficientOrder, de2_constant, de2_proposition_check, fit_quasimodular
from .report import rational_to_str

EXIT_OK = 0
EXIT_DISAGREE = 2
EXIT_USAGE = 64
EXIT_UNKNOWN_ID = 65
EXIT_INSUFFICIENT = 66

DEFAULT_ORDER = 120


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def default_order() -> int:
    raw = os.environ.get("QDIVISOR_DEFAULT_ORDER")
    if raw is None:
        return DEFAULT_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"QDIVISOR_DEFAULT_ORDER must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError("QDIVISOR_DEFAULT_ORDER must be non-negative")
    return value


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _reports_out(args, reports) -> str:
    if args.format == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    if args.format == "csv":
        rows = []
        for r in reports:
            m = r.first_mismatch
            rows.append(
                [r.id, r.order_checked, r.verdict]
                + ([m.n, rational_to_str(m.lhs), rational_to_str(m.rhs)] if m else ["", "", ""])
                + [round(r.elapsed * 1000, 3)]
            )
        return _csv(["id", "order_checked", "verdict", "n", "lhs", "rhs", "elapsed_ms"], rows)
    lines = []
    for r in reports:
        line = f"{r.id}: {r.verdict} (order {r.order_checked}, {r.elapsed * 1000:.1f} ms)"
        if r.first_mismatch:
            m = r.first_mismatch
            where = f" [{m.label}]" if m.label else ""
            line += f" first mismatch at n={m.n}{where}: {rational_to_str(m.lhs)} != {rational_to_str(m.rhs)}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def cmd_coeffs(args) -> int:
    if args.a not in A_VALUES:
        raise UsageError(f"--a must be one of {list(A_VALUES)}, got {args.a}")
    if args.t < 0:
        raise UsageError("--t must be non-negative")
    p = MacParams(args.a, args.t, args.order)
    routes = ROUTES if args.route == "all" else (args.route,)
    series = {r: route_series(r, p) for r in routes}
    first = series[routes[0]]
    agree = all(s == first for s in series.values())
    rows = [(n, c) for n, c in enumerate(first.coeffs) if c]
    status = "ok" if agree else "disagree"
    if args.format == "json":
        doc = {
            "a": args.a,
            "t": args.t,
            "order": args.order,
            "route": args.route,
            "rows": [[n, rational_to_str(c)] for n, c in rows],
            "agreement": status if args.route == "all" else None,
        }
        if not agree:
            doc["routes"] = {r: [rational_to_str(c) for c in s.coeffs] for r, s in series.items()}
        text = json.dumps(doc, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv(["n", "coefficient"], [(n, rational_to_str(c)) for n, c in rows])
    else:
        text = "".join(f"{n} {rational_to_str(c)}\n" for n, c in rows)
        if args.route == "all":
            text += f"agreement: {status}\n"
    _emit(args, text)
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_verify(args) -> int:
    if args.id == "all":
        reports = identities.check_all(args.order, jobs=args.jobs)
    else:
        try:
            reports = [identities.check(args.id, args.order)]
        except identities.UnknownIdentity:
            print(f"unknown identity: {args.id} (see list-identities)", file=sys.stderr)
            return EXIT_UNKNOWN_ID
    _emit(args, _reports_out(args, reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_DISAGREE


def cmd_scan(args) -> int:
    reports = [scan_congruence_2mod3(args.tmax, args.order), scan_congruence_1mod3_mod3(args.order)]
    _emit(args, _reports_out(args, reports))
    if args.format == "text":
        for r in reports:
            if r.detail:
                print(f"  {r.id} detail: {json.dumps(r.detail)}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_DISAGREE


def _parse_target(spec: str) -> tuple[int, int]:
    parts = spec.split(":")
    if len(parts) != 3 or parts[0] != "U":
        raise UsageError(f"target must look like U:a:t, got {spec!r}")
    try:
        a, t = int(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"target must look like U:a:t, got {spec!r}") from None
    if a not in A_VALUES or t < 0:
        raise UsageError(f"unsupported target {spec!r}")
    return a, t


def cmd_fit(args) -> int:
    if args.de2:
        if not 1 <= args.tmax <= 4:
            raise UsageError("--tmax must be between 1 and 4 for --de2")
        rep = de2_proposition_check(args.tmax, args.order)
        doc = {"constant": rational_to_str(de2_constant(rep)), "verdict": rep.verdict, "per_t": rep.detail["per_t"]}
        if args.format == "json":
            text = json.dumps(doc, indent=2) + "\n"
        else:
            text = f"constant: {doc['constant']}\nconsistent: {rep.passed}\n"
            text += "".join(f"t={t}: {v['fit']}\n" for t, v in doc["per_t"].items())
        _emit(args, text)
        return EXIT_OK if rep.passed else EXIT_DISAGREE
    if not args.target:
        raise UsageError("fit needs --target or --de2")
    a, t = _parse_target(args.target)
    try:
        basis = [EisensteinId.parse(b) for b in args.basis.split(",") if b]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not basis:
        raise UsageError("--basis is empty")
    max_weight = args.max_weight if args.max_weight is not None else 2 * t
    target = route_series("product", MacParams(a, t, args.order))
    try:
        expr = fit_quasimodular(target, basis, max_weight)
    except InsufficientOrder as exc:
        print(f"insufficient order: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    text = expr.to_json() + "\n" if args.format == "json" else f"{expr}\n"
    _emit(args, text)
    return EXIT_OK


def cmd_list(args) -> int:
    entries = [identities.REGISTRY[i] for i in identities.ids()]
    if args.format == "json":
        text = json.dumps([{"id": e.id, "summary": e.summary, "cutoff": e.cutoff} for e in entries], indent=2) + "\n"
    elif args.format == "csv":
        text = _csv(["id", "summary", "cutoff"], [(e.id, e.summary, e.cutoff) for e in entries])
    else:
        text = "".join(f"{e.id:22s} {e.summary}\n" for e in entries)
    _emit(args, text)
    return EXIT_OK


def build_parser(order_default: int) -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--order", type=int, default=order_default)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--output", metavar="PATH")

    parser = _Parser(prog="qdivisor", description="Exact computations with MacMahon-type divisor sums.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeffs", parents=[common], help="coefficients MO(a,t;n) for n <= order")
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--route", choices=ROUTES + ("all",), default="all")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("verify", parents=[common], help="check one identity, or all")
    p.add_argument("id")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="congruence scans for a = 1")
    p.add_argument("--tmax", type=int, default=5)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("fit", parents=[common], help="fit U_t(a,q) as a polynomial in Eisenstein series")
    p.add_argument("--target", help="U:a:t")
    p.add_argument("--basis", default="E2,E4,E6", help="comma list like E2,E4@3")
    p.add_argument("--max-weight", type=int, dest="max_weight")
    p.add_argument("--de2", action="store_true", help="determine the E2-derivative constant")
    p.add_argument("--tmax", type=int, default=3)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("list-identities", parents=[common], help="registered identity ids")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    try:
        order_default = default_order()
    except UsageError as exc:
        print(f"qdivisor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = build_parser(order_default).parse_args(argv)
    if args.order < 0:
        print("qdivisor: error: --order must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, UnsupportedA) as exc:
        print(f"qdivisor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qdivisor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
