"""Command-line front end.

Usage:
    struvebounds eval struve_l --nu 0 --x 1
    struvebounds eval hyp2f3 --a 1,1 --b 1.5,1.5,2 --z 25
    struvebounds integral --p 0 --mu 0 --gamma 0.5 --x 5 --method quadrature
    struvebounds bounds --ineq COR_LOWER --nu 0 --x 5 --format json
    struvebounds table --kind upper --format csv
    struvebounds verify --suite all

Exit codes: 0 success, 1 usage, 2 domain or hypothesis violation,
3 numerical failure, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

from .bounds import InequalityId, evaluate
from .errors import ConvergenceError, DomainError, StruveError, StruveOverflowError
from .integrate import IntegralSpec, QuadratureConfig, integral
from .specfun import SeriesConfig, hyp_pfq, struve_l
from .verify import TableKind, regenerate_table, run_suite

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(v: float) -> str:
    return f"{v:.17g}"


def finite_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return v


def float_list(text: str) -> list[float]:
    if not text.strip():
        return []
    return [finite_float(t) for t in text.split(",")]


def _write_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _configs(args) -> tuple[QuadratureConfig, SeriesConfig]:
    try:
        cfg = SeriesConfig(args.rel_tol, args.max_terms, args.trailing_small)
        qcfg = QuadratureConfig(args.quad_rel_tol, args.quad_abs_tol, args.max_subdivisions, args.series_split)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return qcfg, cfg


def cmd_eval(args) -> int:
    _, cfg = _configs(args)
    if args.function == "struve_l":
        if args.nu is None or args.x is None:
            raise UsageError("struve_l needs --nu and --x")
        params = {"nu": args.nu, "x": args.x}
        value = struve_l(args.nu, args.x, cfg)
    else:
        p, q = (1, 2) if args.function == "hyp1f2" else (2, 3)
        if args.a is None or args.b is None or args.z is None:
            raise UsageError(f"{args.function} needs --a, --b and --z")
        if len(args.a) != p or len(args.b) != q:
            raise UsageError(f"{args.function} takes {p} numerator and {q} denominator parameters")
        params = {"a": args.a, "b": args.b, "z": args.z}
        value = hyp_pfq(args.a, args.b, args.z, cfg)
    if args.format == "json":
        print(json.dumps({"function": args.function, "params": params, "value": value}))
    elif args.format == "csv":
        print(_write_csv(["function", "value"], [[args.function, value]]), end="")
    else:
        print(fmt(value))
    return EXIT_OK


def cmd_integral(args) -> int:
    qcfg, cfg = _configs(args)
    spec = IntegralSpec(args.p, args.mu, args.gamma, args.x)
    value, method = integral(spec, args.method, qcfg, cfg)
    if args.format == "json":
        print(json.dumps({"p": spec.p, "mu": spec.mu, "gamma": spec.gamma, "x": spec.x,
                          "method": method, "value": value}))
    elif args.format == "csv":
        print(_write_csv(["p", "mu", "gamma", "x", "method", "value"],
                         [[spec.p, spec.mu, spec.gamma, spec.x, method, value]]), end="")
    else:
        print(f"{fmt(value)}  (method: {method})")
    return EXIT_OK


def cmd_bounds(args) -> int:
    qcfg, cfg = _configs(args)
    try:
        tag = InequalityId.parse(args.ineq)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    r = evaluate(tag, args.nu, args.x, args.n, args.gamma, qcfg, cfg)
    d = r.as_dict()
    if args.format == "json":
        print(json.dumps(d))
    elif args.format == "csv":
        pt = d["point"]
        print(_write_csv(["inequality", "nu", "n", "gamma", "x", "bound", "integral", "slack", "rel_error"],
                         [[d["inequality"], float(pt["nu"]), float(pt["n"]), float(pt["gamma"]), float(pt["x"]),
                           r.bound_value, r.integral_value, r.signed_slack, r.relative_error]]), end="")
    else:
        kind = "upper" if tag.is_upper else "lower"
        print(f"{tag.name} ({kind} bound) at nu={args.nu:g}, n={args.n:g}, gamma={args.gamma:g}, x={args.x:g}")
        print(f"  bound      {fmt(r.bound_value)}")
        print(f"  integral   {fmt(r.integral_value)}")
        print(f"  slack      {fmt(r.signed_slack)}")
        print(f"  rel_error  {fmt(r.relative_error)}")
    return EXIT_OK


def cmd_table(args) -> int:
    _, cfg = _configs(args)
    table = regenerate_table(TableKind(args.kind), cfg=cfg)
    if args.format == "json":
        print(json.dumps(table.as_dict()))
    elif args.format == "csv":
        rows = [[nu, x, f"{table.entries[i][j]:.4f}"]
                for i, nu in enumerate(table.nu_values) for j, x in enumerate(table.x_values)]
        print(_write_csv(["nu", "x", "value"], rows), end="")
    else:
        which = "L" if table.kind is TableKind.LOWER else "U"
        print(f"Relative error in approximating F_nu(x) by {which}_nu(x)")
        print("nu \\ x  " + "".join(f"{x:>9g}" for x in table.x_values))
        for nu, row in zip(table.nu_values, table.entries):
            print(f"{nu:>7g}  " + "".join(f"{v:>9.4f}" for v in row))
    return EXIT_OK


def cmd_verify(args) -> int:
    qcfg, cfg = _configs(args)
    results = run_suite(args.suite, qcfg, cfg, args.margin)
    ok = all(r.ok for r in results)
    if args.format == "json":
        print(json.dumps({"ok": ok, "suites": [r.as_dict() for r in results]}))
    elif args.format == "csv":
        rows = []
        for r in results:
            rows += [[r.suite, c.name, "pass" if c.passed else "FAIL", c.detail] for c in r.checks]
            rows += [[r.suite, s.inequality.name, "pass" if s.ok else "FAIL",
                      f"evaluated={s.evaluated} skipped={s.skipped} violations={len(s.violations)}"]
                     for s in r.sweeps]
        print(_write_csv(["suite", "check", "status", "detail"], rows), end="")
    else:
        for r in results:
            print(f"[{r.suite}]")
            for c in r.checks:
                print(f"  {'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
            for s in r.sweeps:
                print(f"  {'PASS' if s.ok else 'FAIL'}  {s.inequality.name}: {s.evaluated} points, "
                      f"{s.skipped} skipped, {len(s.violations)} violations, "
                      f"min relative slack {s.min_relative_slack:.3e}")
                for v in s.violations:
                    print(f"        violation at nu={v.nu:g} n={v.n:g} gamma={v.gamma:g} x={v.x:g}: "
                          f"slack {v.signed_slack:.3e}")
            if r.cells_compared:
                print(f"  {r.cells_compared} cells compared, {len(r.mismatches)} mismatches")
                for m in r.mismatches:
                    print(f"        nu={m.nu:g} x={m.x:g}: computed {m.computed:.4f}, published {m.published:.4f}")
        print("OK" if ok else "VERIFICATION FAILED")
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "csv", "json"], default="text")
    common.add_argument("--rel-tol", type=finite_float, default=1e-15, help="series relative tolerance (1e-15)")
    common.add_argument("--max-terms", type=int, default=10_000, help="series term cap (10000)")
    common.add_argument("--trailing-small", type=int, default=3,
                        help="negligible terms required after the peak (3)")
    common.add_argument("--quad-rel-tol", type=finite_float, default=1e-12, help="quadrature tolerance (1e-12)")
    common.add_argument("--quad-abs-tol", type=finite_float, default=1e-300, help="quadrature floor (1e-300)")
    common.add_argument("--max-subdivisions", type=int, default=2000, help="quadrature bisections (2000)")
    common.add_argument("--series-split", type=finite_float, default=None,
                        help="analytic head length near 0 (default min(x, 1)/8)")

    parser = _Parser(prog="struvebounds", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate L_nu, 1F2 or 2F3")
    p.add_argument("function", choices=["struve_l", "hyp1f2", "hyp2f3"])
    p.add_argument("--nu", type=finite_float)
    p.add_argument("--x", type=finite_float)
    p.add_argument("--a", type=float_list, help="comma-separated numerator parameters")
    p.add_argument("--b", type=float_list, help="comma-separated denominator parameters")
    p.add_argument("--z", type=finite_float)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("integral", parents=[common], help="int_0^x exp(-gamma t) t^p L_mu(t) dt")
    p.add_argument("--p", type=finite_float, required=True)
    p.add_argument("--mu", type=finite_float, required=True)
    p.add_argument("--gamma", type=finite_float, default=0.0)
    p.add_argument("--x", type=finite_float, required=True)
    p.add_argument("--method", choices=["series", "quadrature", "auto"], default="auto")
    p.set_defaults(func=cmd_integral)

    p = sub.add_parser("bounds", parents=[common], help="evaluate one inequality instance")
    p.add_argument("--ineq", required=True, help=", ".join(m.name for m in InequalityId))
    p.add_argument("--nu", type=finite_float, required=True)
    p.add_argument("--n", type=finite_float, default=0.0)
    p.add_argument("--gamma", type=finite_float, default=0.0)
    p.add_argument("--x", type=finite_float, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", parents=[common], help="regenerate a relative-error table")
    p.add_argument("--kind", choices=["lower", "upper"], required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=["all", "identities", "inequalities", "tables", "tightness"], default="all")
    p.add_argument("--margin", type=finite_float, default=1e-9, help="relative violation margin (1e-9)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"struvebounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"struvebounds: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ConvergenceError, StruveOverflowError) as exc:
        print(f"struvebounds: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except StruveError as exc:
        print(f"struvebounds: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
