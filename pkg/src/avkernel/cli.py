"""Command-line driver: ``avk <subcommand> ...`` (or ``python3 -m avkernel``).

Every value is printed in its literal format, which reparses to the same value.
Results end with one machine-readable line ``key=literal; key=literal; check=OK``.
Exit codes: 0 success, 1 failed check, 2 parse or contract error, 3 precision exhausted.
"""

from __future__ import annotations

import argparse
import sys

from .coeff import QQ, AdicCoeff
from .errors import (
    DivisionByZeroAtPrecision,
    KernelError,
    ParseError,
    PrecisionExhausted,
)
from .hahn import closure_sample, hahn_evaluate, truncate, truncation_closed_on_sample
from .hensel import Poly1, hensel_root, hensel_root_quadratic
from .literals import parse_adic, parse_hahn, parse_kseries, parse_series
from .series import is_regular_in_last
from .termlang import (
    SeriesRegistry,
    eval_formula,
    eval_term,
    format_formula,
    format_term,
    load_env,
    load_registry,
    parse_formula,
    parse_term,
)
from .weierstrass import normal_form_holds, regularize, univariate_normalize, weierstrass_divide, weierstrass_prepare

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


def _block(pairs, ok=None) -> str:
    parts = [f"{k}={v}" for k, v in pairs]
    if ok is not None:
        parts.append(f"check={'OK' if ok else 'FAIL'}")
    return "; ".join(parts)


def _series_arg(text, precision):
    f = parse_series(text, precision=precision)
    if precision is not None and f.precision != precision:
        if f.precision < precision:
            raise ParseError(f"{text!r} is only known modulo t^{f.precision}")
        f = f.with_precision(precision)
    return f


def _registry(args):
    if not args.registry:
        return SeriesRegistry()
    return load_registry(args.registry, args.precision)


def _env(args):
    return load_env(args.env, args.precision) if args.env else {}


def _precision(args, registry):
    if args.precision is not None:
        return args.precision
    if registry:
        return registry.precision
    raise ParseError("--precision is required without a registry")


def cmd_eval(args, out):
    reg = _registry(args)
    env = _env(args)
    term = parse_term(args.term, reg, env.keys())
    value = eval_term(term, env, reg, _precision(args, reg))
    print(f"term: {format_term(term)}", file=out)
    print(_block([("value", value)]), file=out)
    return EXIT_OK


def cmd_check(args, out):
    reg = _registry(args)
    env = _env(args)
    phi = parse_formula(args.formula, reg, env.keys())
    truth = eval_formula(phi, env, reg, _precision(args, reg))
    print(f"formula: {format_formula(phi)}", file=out)
    print(_block([("value", "true" if truth else "false")]), file=out)
    return EXIT_OK


def cmd_wdiv(args, out):
    f = _series_arg(args.f, args.precision)
    g = _series_arg(args.g, f.precision)
    q, r = weierstrass_divide(f, g)
    d = is_regular_in_last(f)
    ok = q * f + r == g and (not r or r.deg_in_last() < d)
    print(f"q: {q}", file=out)
    print(f"r: {r}", file=out)
    print(_block([("q", q), ("r", r)], ok), file=out)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_wprep(args, out):
    f = _series_arg(args.f, args.precision)
    prep = weierstrass_prepare(f)
    ok = prep.unit * f == prep.monic and prep.unit.is_unit()
    print(f"unit: {prep.unit}", file=out)
    print(f"monic: {prep.monic}", file=out)
    print(_block([("unit", prep.unit), ("monic", prep.monic), ("degree", prep.degree)], ok), file=out)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_regularize(args, out):
    f = _series_arg(args.f, args.precision)
    d, h, ell = regularize(f, args.d)
    ok = is_regular_in_last(h) == ell
    print(f"transformed: {h}", file=out)
    print(_block([("d", d), ("f", h), ("ell", ell)], ok), file=out)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_uninorm(args, out):
    c0, h = parse_kseries(args.g, precision=args.precision)
    nf = univariate_normalize(c0, h)
    ok = normal_form_holds(c0, h, nf)
    print(f"scale: {nf.scale}", file=out)
    print(f"unit: {nf.unit}", file=out)
    print(f"monic: {nf.monic}", file=out)
    print(_block([("mu", nf.mu), ("scale", nf.scale), ("unit", nf.unit), ("monic", nf.monic)], ok), file=out)
    return EXIT_OK if ok else EXIT_CHECK


def _adic_list(text, N):
    return [parse_adic(part.strip(), N) for part in text.split(",")]


def cmd_hensel(args, out):
    N = args.precision
    P = Poly1(_adic_list(args.poly, N), N)
    a = parse_adic(args.start, N)
    if args.e is not None:
        b = hensel_root_quadratic(P, a, parse_adic(args.e, N))
    else:
        b = hensel_root(P, a)
    residual = P(b)
    ok = residual.is_zero()
    print(f"root: {b}", file=out)
    print(_block([("b", b), ("residual", residual)], ok), file=out)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_hahn_eval(args, out):
    cutoff = QQ(args.cutoff)
    f = parse_series(args.f, precision=args.precision)
    ys = [parse_hahn(y) for y in args.y]
    value = hahn_evaluate(f, ys, cutoff)
    print(_block([("value", value)]), file=out)
    return EXIT_OK


def cmd_truncate(args, out):
    a = parse_hahn(args.a)
    value = truncate(a, QQ(args.gamma))
    print(_block([("value", value)]), file=out)
    return EXIT_OK


def cmd_closure(args, out):
    registry = load_registry(args.registry) if args.registry else {}
    gens = [parse_hahn(g) for g in args.gen]
    sample = closure_sample(gens, registry, args.depth, QQ(args.cutoff), budget=args.budget)
    verdict = truncation_closed_on_sample(sample)
    if args.show:
        for x in sample:
            print(x, file=out)
    pairs = [("size", len(sample)), ("closed", "true" if verdict.closed else "false")]
    if not verdict.closed:
        pairs += [("element", verdict.element), ("gamma", verdict.gamma)]
    print(_block(pairs), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="avk", description="Exact analytic valued-field kernel.")
    sub = p.add_subparsers(dest="command", required=True)

    def precision_opt(sp, required=False):
        sp.add_argument("--precision", "-N", type=int, required=required, help="t-adic precision N")

    s = sub.add_parser("eval", help="evaluate a term")
    precision_opt(s)
    s.add_argument("--registry", help="file of 'name := <series literal>' lines")
    s.add_argument("--env", help="file of 'name := <laurent literal>' lines")
    s.add_argument("--term", required=True)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("check", help="decide a quantifier-free formula")
    precision_opt(s)
    s.add_argument("--registry")
    s.add_argument("--env")
    s.add_argument("--formula", required=True)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("wdiv", help="Weierstrass division g = q*f + r")
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    precision_opt(s)
    s.set_defaults(func=cmd_wdiv)

    s = sub.add_parser("wprep", help="Weierstrass preparation unit*f = monic")
    s.add_argument("--f", required=True)
    precision_opt(s)
    s.set_defaults(func=cmd_wprep)

    s = sub.add_parser("regularize", help="make f regular in the last variable")
    s.add_argument("--f", required=True)
    s.add_argument("--d", type=int)
    precision_opt(s)
    s.set_defaults(func=cmd_regularize)

    s = sub.add_parser("uninorm", help="normal form of a one-variable series over K")
    s.add_argument("--g", required=True)
    precision_opt(s)
    s.set_defaults(func=cmd_uninorm)

    s = sub.add_parser("hensel", help="lift a simple root")
    s.add_argument("--poly", required=True, help="comma-separated coefficients, constant term first")
    s.add_argument("--start", required=True)
    s.add_argument("--e", help="defect e with P(start) = e*P'(start)^2 (quadratic lifting)")
    precision_opt(s, required=True)
    s.set_defaults(func=cmd_hensel)

    s = sub.add_parser("hahn-eval", help="evaluate a series at Hahn points")
    s.add_argument("--f", required=True)
    s.add_argument("--y", action="append", default=[], help="Hahn literal (repeat per variable)")
    s.add_argument("--cutoff", required=True)
    precision_opt(s)
    s.set_defaults(func=cmd_hahn_eval)

    s = sub.add_parser("truncate", help="proper truncation of a Hahn series")
    s.add_argument("--a", required=True)
    s.add_argument("--gamma", required=True)
    s.set_defaults(func=cmd_truncate)

    s = sub.add_parser("closure", help="sample the closure of Hahn generators and test truncation closedness")
    s.add_argument("--gen", action="append", default=[], help="Hahn literal (repeatable)")
    s.add_argument("--registry")
    s.add_argument("--depth", type=int, default=1)
    s.add_argument("--cutoff", required=True)
    s.add_argument("--budget", type=int, default=20000)
    s.add_argument("--show", action="store_true", help="print the sample")
    s.set_defaults(func=cmd_closure)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (PrecisionExhausted, DivisionByZeroAtPrecision) as exc:
        print(f"precision exhausted: {exc}", file=err)
        return EXIT_PRECISION
    except (KernelError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
