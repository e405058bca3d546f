"""Command-line harness.

Subcommands: ``distance`` (file in, JSON result out), ``build`` (named
constructions to code/complex files), ``example`` (reproduce a worked
example and compare against its expected values), ``conjecture`` (the
random-ensemble saturation experiment), ``bounds`` (closed-form bound
calculator).

Exit codes: 0 ok, 1 expected-value mismatch, 2 parse error, 3 budget
exceeded without a fallback.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fileio
from .constructions import (circulant, concatenated_stabilizer, dbl_even_code,
                            homological_product, multi_fold, odd_base_code,
                            qhp, repetition_check, steane_code, subsystem_product,
                            subsystem_qhp, xz_symmetric_product)
from .distance import (BudgetExceeded, DEFAULT_BUDGET, ProductDescriptor,
                       distance_bounds, dz_auto, dz_covering_set, dz_exact)
from .experiments import (EXAMPLE_NAMES, ExperimentConfig, conjecture_experiment,
                          oracle_experiment, run_example)
from .fileio import ParseError
from .gf import parse_field_tag

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


def _write_report(report: dict, out: str | None) -> None:
    if out:
        fileio.dump_report(report, out)


def _cmd_distance(args) -> int:
    try:
        code = fileio.read_code(args.codefile)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if args.method == "exact":
            result = dz_exact(code, args.side, budget=args.budget)
        elif args.method == "cover":
            result = dz_covering_set(code, args.side, trials=args.trials,
                                     seed=args.seed, info_weight=args.info_weight)
        else:
            result = dz_auto(code, args.side, budget=args.budget,
                             trials=args.trials, seed=args.seed,
                             info_weight=args.info_weight)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    record = fileio.result_to_json(result)
    record["params"] = list(code.params())
    record["side"] = args.side
    report = {"name": "distance", "config": vars(args) | {"func": None},
              "records": [record], "passed": True}
    report["config"].pop("func", None)
    print(f"n={code.n} k={code.k} side={args.side} "
          f"d={record['value']} method={result.method} exact={result.exact}")
    _write_report(report, args.out)
    return EXIT_OK


def _resolve_code(spec: str, qtag: str | None):
    if spec == "steane":
        return steane_code()
    if spec.startswith("odd-base"):
        q = int(spec.split(":")[1]) if ":" in spec else 3
        return odd_base_code(parse_field_tag(str(q)))
    if spec.startswith("dbl-even"):
        q = int(spec.split(":")[1]) if ":" in spec else 4
        return dbl_even_code(parse_field_tag(str(q)))
    return fileio.read_code(spec)


def _resolve_matrix(spec: str, qtag: str | None):
    f = parse_field_tag(qtag) if qtag else parse_field_tag("2")
    if spec.startswith("rep:"):
        return repetition_check(f, int(spec.split(":")[1]))
    if spec.startswith("circ:"):
        return repetition_check(f, int(spec.split(":")[1]), full=True)
    return fileio.read_matrix(spec)


def _cmd_build(args) -> int:
    try:
        if args.construction == "subsystem-product":
            built = subsystem_product(_resolve_code(args.qa, args.q),
                                      _resolve_code(args.qb, args.q))
        elif args.construction == "concatenated":
            built = concatenated_stabilizer(_resolve_code(args.qa, args.q),
                                            _resolve_code(args.qb, args.q))
        elif args.construction == "xz-symmetric":
            built = xz_symmetric_product(_resolve_code(args.qa, args.q))
        elif args.construction == "homological-product":
            built = homological_product(_resolve_matrix(args.pa, args.q),
                                        _resolve_matrix(args.pb, args.q))
        elif args.construction == "qhp":
            built = qhp(_resolve_matrix(args.pa, args.q),
                        _resolve_matrix(args.pb, args.q))
        elif args.construction == "subsystem-qhp":
            built = subsystem_qhp(_resolve_matrix(args.pa, args.q),
                                  _resolve_matrix(args.pb, args.q))
        elif args.construction == "multi-fold":
            built = multi_fold(_resolve_matrix(args.pa, args.q), args.a, args.b)
        else:
            print(f"error: unknown construction {args.construction}", file=sys.stderr)
            return EXIT_PARSE
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.construction == "multi-fold":
        if args.out:
            fileio.write_complex(args.out, built)
        print(f"complex with dims {built.dims}; provenance {built.provenance}")
    else:
        if args.out:
            fileio.write_code(args.out, built)
        print(f"{built!r}; provenance {built.provenance}; expected {built.expected}")
    return EXIT_OK


def _cmd_example(args) -> int:
    try:
        report = run_example(args.name, q=args.q, size=args.size,
                             trials=args.trials, seed=args.seed,
                             budget=args.budget)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    status = "pass" if report["passed"] else "FAIL"
    print(f"{report['name']}: {status}")
    for rec in report["records"]:
        print(f"  {json.dumps(rec, sort_keys=True)}")
    _write_report(report, args.out)
    return EXIT_OK if report["passed"] else EXIT_MISMATCH


def _cmd_conjecture(args) -> int:
    cfg = ExperimentConfig(q=args.q, n_min=args.n_min, n_max=args.n_max,
                           instances=args.instances, trials=args.trials,
                           seed=args.seed, budget=args.budget)
    report = conjecture_experiment(cfg)
    print(json.dumps(report["summary"], sort_keys=True))
    _write_report(report, args.out)
    return EXIT_OK if report["passed"] else EXIT_MISMATCH


def _cmd_oracle(args) -> int:
    report = oracle_experiment(instances=args.instances, trials=args.trials,
                               seed=args.seed)
    print(json.dumps(report["summary"], sort_keys=True))
    _write_report(report, args.out)
    return EXIT_OK if report["passed"] else EXIT_MISMATCH


def _cmd_bounds(args) -> int:
    desc = ProductDescriptor(q=args.q, n_a=args.na, d_xa=args.dxa,
                             d_za=args.dza, d_zb=args.dzb,
                             cyclic_single_a=args.cyclic,
                             xz_symmetric=args.xz_symmetric)
    try:
        lower, upper = distance_bounds(desc)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    record = {"lower": [fileio.value_to_json(lower[0]), lower[1]],
              "upper": [fileio.value_to_json(upper[0]), upper[1]]}
    print(json.dumps(record, sort_keys=True))
    _write_report({"name": "bounds", "config": vars(args) | {"func": None},
                   "records": [record], "passed": True}, args.out)
    return EXIT_OK


def _add_common(p, budget=True):
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=200)
    if budget:
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", help="write the JSON report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fqchain",
        description="F_q chain complexes, product codes, and homological distances")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="distance of a code file")
    p.add_argument("codefile")
    p.add_argument("--side", choices=["x", "z"], default="z")
    p.add_argument("--method", choices=["exact", "cover", "auto"], default="auto")
    p.add_argument("--info-weight", type=int, default=1, choices=[1, 2])
    _add_common(p)
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("build", help="build a named construction")
    p.add_argument("construction",
                   choices=["subsystem-product", "concatenated", "xz-symmetric",
                            "homological-product", "qhp", "subsystem-qhp",
                            "multi-fold"])
    p.add_argument("--qa", help="code file or builtin (steane, odd-base:q, dbl-even:q)")
    p.add_argument("--qb")
    p.add_argument("--pa", help="matrix file or builtin (rep:L, circ:L)")
    p.add_argument("--pb")
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--q", help="field tag for builtin matrices (q or p^m)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("example", help="reproduce a worked example")
    p.add_argument("name", help=f"one of {', '.join(EXAMPLE_NAMES)}")
    p.add_argument("--q", type=int)
    p.add_argument("--size", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_example, trials=500)

    p = sub.add_parser("conjecture", help="distance-saturation ensemble")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--instances", type=int, default=500)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=64)
    p.add_argument("--budget", type=int, default=1 << 20)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("oracle", help="covering-set vs exhaustive comparison")
    p.add_argument("--instances", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("bounds", help="closed-form product-code bounds")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--na", type=int, required=True)
    p.add_argument("--dxa", type=int, required=True)
    p.add_argument("--dza", type=int, required=True)
    p.add_argument("--dzb", type=int, required=True)
    p.add_argument("--cyclic", action="store_true",
                   help="A is a single-qudit (consta)cyclic code")
    p.add_argument("--xz-symmetric", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_bounds)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
