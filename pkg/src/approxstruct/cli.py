"""Command-line front end.

Exit codes: 0 success or PASS, 1 NOT-FOUND or FAIL, 2 input error,
3 precision or search budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import checks, density, io, search, transforms
from .errors import (ElementCapExceeded, SearchSpaceExceeded, SetSpecError,
                     UndecidedComparison)
from .families import FAMILIES, generate

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _bigint(text: str) -> int:
    text = text.strip()
    try:
        if "^" in text:  # 2^64 style, convenient on the command line
            base, exp = text.split("^", 1)
            return int(base) ** int(exp)
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _emit(doc, out=None) -> None:
    json.dump(doc, out or sys.stdout, indent=2)
    (out or sys.stdout).write("\n")


def _load_set(args):
    if args.set is None:
        raise SetSpecError("--set is required")
    spec = args.set
    if args.bound is not None and args.command != "verify":
        doc = json.loads(open(spec).read() if not spec.lstrip().startswith("{") else spec)
        if doc.get("kind") == "family":
            doc["bound"] = str(args.bound)
        spec = doc
    return io.parse_setspec(spec)


def _config(args) -> io.RunConfig:
    cfg = io.load_config(args.config) if args.config else io.RunConfig()
    return cfg.with_overrides(
        seed=args.seed,
        tolerance=getattr(args, "tolerance", None),
        precision_start=getattr(args, "precision", None),
        precision_cap=getattr(args, "precision_cap", None),
        exact_threshold=getattr(args, "exact_threshold", None),
        horizon_start=getattr(args, "start", None),
        horizon_ratio=getattr(args, "ratio", None),
        horizon_count=getattr(args, "count", None),
    )


# -- subcommands -----------------------------------------------------------

def cmd_density(args) -> int:
    cfg = _config(args)
    A = _load_set(args)
    if args.kind in ("r", "banach-r") and args.r is None:
        raise SetSpecError(f"--r is required for kind {args.kind}")
    if args.candidates:
        cands = [int(x) for x in args.candidates.replace(",", " ").split()]
    elif cfg.candidate_policy == "explicit":
        cands = cfg.candidates
    else:
        cands = None
    if args.kind in ("banach-r", "lbd") and args.n:
        horizons = [args.n]
    else:
        horizons = density.horizon_grid(cfg.horizon_start, cfg.horizon_ratio, cfg.horizon_count)
    rows = density.density_curve(A, args.kind, horizons, args.r, cands,
                                 cfg.exact_threshold, cfg.precision_start, args.normalization)
    if args.out == "json":
        his = [row[2].value.hi for row in rows]
        los = [row[2].value.lo for row in rows]
        _emit({"kind": args.kind, "r": None if args.r is None else io.fraction_str(args.r),
               "normalization": args.normalization,
               "rows": [dict(horizon=str(h), **io.estimate_to_json(e, k)) for h, k, e in rows],
               "running_max": io.decimal_str(max(his), "up") if his else None,
               "running_min": io.decimal_str(min(los), "down") if los else None})
    else:
        io.write_curve_csv(rows, sys.stdout)
    return EXIT_OK


def cmd_find(args) -> int:
    cfg = _config(args)
    A = _load_set(args)
    if args.kind == "geometric":
        cert = search.find_geometric(A, args.l, args.min_a, args.min_d, cfg.element_cap)
    else:
        if args.m is None or args.eps is None:
            raise SetSpecError("power-ap needs --m and --eps")
        cert = search.find_power_ap(A, args.l, args.m, args.eps, args.min_a, args.min_d,
                                    cfg.element_cap)
    if cert is None:
        _emit({"status": "NOT-FOUND", "kind": args.kind, "l": str(args.l),
               "min_a": str(args.min_a), "min_d": str(args.min_d),
               "set_max": None if A.max is None else str(A.max)})
        return EXIT_NEGATIVE
    if not cert.validate(A):
        raise RuntimeError("certificate failed re-validation")
    _emit(io.certificate_to_json(cert))
    return EXIT_OK


def cmd_verify(args) -> int:
    A = _load_set(args)
    if args.bound is None:
        raise SetSpecError("--bound is required for verify")
    if args.kind == "no-pow2":
        if args.eps is None:
            raise SetSpecError("no-pow2 needs --eps")
        report = search.verify_no_pow2_approx(A, args.eps, args.bound)
        if args.delta is not None:
            report.side_condition = search.pow2_side_condition(args.delta, args.eps)
        _emit(io.report_to_json(report))
        return EXIT_OK if report.passed else EXIT_NEGATIVE
    if args.kind == "no-mth-power":
        if args.eps is None or args.m is None:
            raise SetSpecError("no-mth-power needs --m and --eps")
        report = search.verify_no_power_approx(A, args.m, args.eps, args.bound)
        if args.delta is not None:
            report.side_condition = search.power_side_condition(args.delta, args.eps, args.m)
        _emit(io.report_to_json(report))
        return EXIT_OK if report.passed else EXIT_NEGATIVE
    # no-3geo: PASS means nothing was found below the bound
    if args.c is None:
        raise SetSpecError("no-3geo needs --c")
    cert = search.find_3term_geometric_approx(A, args.c, args.min_param, args.bound)
    if cert is None:
        _emit({"status": "PASS", "searched_bound": str(args.bound),
               "min_param": str(args.min_param), "note": "absence below the bound only"})
        return EXIT_OK
    _emit({"status": "FAIL", "violation": io.certificate_to_json(cert)})
    return EXIT_NEGATIVE


def cmd_transform(args) -> int:
    A = _load_set(args)
    if args.kind == "log":
        img = transforms.log_image(A)
    else:
        img = transforms.power_image(A, args.p, args.q)
    _emit(io.set_to_json(img))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.bound is None:
        raise SetSpecError("--bound is required for gen")
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise SetSpecError(f"--param expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        params[key.strip()] = value.strip()
    _emit(io.set_to_json(generate(args.family, params, args.bound)))
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = _config(args)
    results = checks.run_suite(args.suite, cfg)
    for res in results:
        print(res.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_NEGATIVE


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--set", help="set spec: JSON file or inline JSON")
    common.add_argument("--bound", type=_bigint, help="family bound, or search bound for verify")
    common.add_argument("--config", help="key=value config file (flags win)")
    common.add_argument("--out", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int)

    p = argparse.ArgumentParser(prog="approxstruct", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("density", parents=[common], help="density curves with enclosures")
    d.add_argument("--kind", choices=("r", "log", "banach-r", "lbd"), required=True)
    d.add_argument("--r", type=_rational)
    d.add_argument("--n", type=_bigint, help="single Banach window scale")
    d.add_argument("--start", type=_bigint)
    d.add_argument("--ratio", type=_rational)
    d.add_argument("--count", type=int)
    d.add_argument("--candidates", help="explicit window starts, comma separated")
    d.add_argument("--normalization", choices=("definition", "relative"), default="definition")
    d.add_argument("--precision", type=int)
    d.add_argument("--precision-cap", type=int)
    d.add_argument("--exact-threshold", type=int)
    d.set_defaults(func=cmd_density)

    f = sub.add_parser("find", parents=[common], help="certified approximate progressions")
    f.add_argument("--kind", choices=("geometric", "power-ap"), required=True)
    f.add_argument("--l", type=int, required=True)
    f.add_argument("--m", type=int)
    f.add_argument("--eps", type=_rational)
    f.add_argument("--min-a", type=int, default=0)
    f.add_argument("--min-d", type=int, default=0)
    f.set_defaults(func=cmd_find)

    v = sub.add_parser("verify", parents=[common], help="negative verifiers")
    v.add_argument("--kind", choices=("no-pow2", "no-mth-power", "no-3geo"), required=True)
    v.add_argument("--eps", type=_rational)
    v.add_argument("--m", type=int)
    v.add_argument("--c", type=_rational)
    v.add_argument("--delta", type=_rational, help="family delta, to check the side condition")
    v.add_argument("--min-param", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("transform", parents=[common], help="log2 or power image of a set")
    t.add_argument("--kind", choices=("log", "power"), required=True)
    t.add_argument("--p", type=int, default=1)
    t.add_argument("--q", type=int, default=2)
    t.set_defaults(func=cmd_transform)

    g = sub.add_parser("gen", parents=[common], help="generate a family member")
    g.add_argument("--family", choices=sorted(FAMILIES), required=True)
    g.add_argument("--param", action="append", help="key=value, repeatable")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", parents=[common], help="finite-horizon inequality suites")
    c.add_argument("--suite", choices=("chain", "thm25", "prop31", "prop36", "all"), default="all")
    c.add_argument("--tolerance", type=float)
    c.set_defaults(func=cmd_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    # budget errors first: ElementCapExceeded is also a ValueError
    except (UndecidedComparison, ElementCapExceeded, SearchSpaceExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SetSpecError, ValueError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
