"""Command-line front end.

Subcommands: branch, tate, iwahori, interp, verify.  All output is JSON
(optionally flattened to CSV for leaf tables); identical configurations
produce byte-identical reports.  Exit codes: 0 all checks pass, 1 a
mathematical check failed, 2 a resource budget was exceeded, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .glrep import WeightData, cone_decompose
from .suites import SUITES, BudgetExceeded


EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3


def _emit(report: dict, out_path: str | None, csv: bool = False) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if out_path:
        base_dir = os.environ.get("PADICDESK_OUT_DIR", "")
        path = out_path if os.path.isabs(out_path) or not base_dir else \
            os.path.join(base_dir, out_path)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        if csv:
            with open(path + ".csv", "w", encoding="utf-8") as fh:
                fh.write(_flatten_csv(report))
    else:
        sys.stdout.write(text + "\n")
        if csv:
            sys.stdout.write(_flatten_csv(report))


def _flatten_csv(report: dict) -> str:
    rows = ["suite,check,passed"]
    for suite_rep in report.get("suites", [report]):
        for c in suite_rep.get("checks", []):
            rows.append(f"{suite_rep.get('suite', '')},{c['id']},{int(c['passed'])}")
    return "\n".join(rows) + "\n"


def _run_branch(args) -> int:
    try:
        if args.weight_json:
            spec = json.loads(args.weight_json)
        else:
            with open(args.weight, "r", encoding="utf-8") as fh:
                spec = json.load(fh)
    except json.JSONDecodeError as err:
        _emit({"error": "invalid JSON", "message": str(err),
               "line": err.lineno, "column": err.colno}, args.out)
        return EXIT_INPUT
    except OSError as err:
        _emit({"error": "cannot read weight spec", "message": str(err)}, args.out)
        return EXIT_INPUT
    try:
        wd = WeightData.from_json(spec)
    except (KeyError, TypeError, ValueError) as err:
        _emit({"error": "malformed weight spec", "message": str(err)}, args.out)
        return EXIT_INPUT

    from . import branch as branch_pkg
    from .rationals import valuation
    from .uea import branching_operator_constant

    bad = wd.cone_violation()
    if bad is not None:
        _emit({"error": "weight outside the cone", "violation": bad}, args.out)
        return EXIT_INPUT
    try:
        bm = branch_pkg.BranchModel(wd, dim_cap=args.dim_cap)
    except ValueError as err:
        _emit({"error": "dimension cap exceeded", "message": str(err)}, args.out)
        return EXIT_BUDGET
    except ArithmeticError as err:
        _emit({"error": "falsified", "message": str(err)}, args.out)
        return EXIT_FALSIFIED

    report = {
        "weight": wd.to_json(),
        "cone_decomposition": {str(k): v for k, v in sorted(
            cone_decompose(wd).items(), key=lambda kv: str(kv[0]))},
        "model_dimension": bm.dimension,
        "eigenspace_dimension": bm.eigen_dimension,
        "branch_vector": bm.to_json(),
        "p": args.p, "beta": args.beta, "seed": args.seed,
    }
    # normalization witness
    u = branch_pkg.u_conjugator(wd.n, wd.d)
    base = branch_pkg.v_basepoint(wd.n, wd.d)
    report["normalization_value"] = str(bm.pair_value(u, base))

    if any(wd.j):
        wd0 = WeightData(wd.n, wd.d, wd.kappa0,
                         [list(r) for r in wd.kappa], [0] * wd.d)
        bm0 = branch_pkg.BranchModel(wd0, dim_cap=args.dim_cap)
        try:
            res = branching_operator_constant(bm, bm0)
            report["operator_constant"] = str(res["constant"])
            report["operator"] = res["operator"].to_json()
        except ArithmeticError as err:
            _emit({"error": "falsified", "message": str(err)}, args.out)
            return EXIT_FALSIFIED

    # sample restriction values on the congruence set
    import random

    rnd = random.Random(args.seed)
    from .suites import _random_congruence_unipotent, _random_unit_box_point

    p, beta = args.p, args.beta
    M = beta + 2
    samples = []
    for _ in range(5):
        g = _random_congruence_unipotent(wd.n, wd.d, p, beta, M, rnd)
        a = _random_unit_box_point(wd.n, p, beta, M, rnd)
        val = bm.box_restriction_value(g, a)
        samples.append({
            "box_point": [str(x) for x in a],
            "value": str(val),
            "unit_congruent": bool(valuation(val - 1, p) >= beta),
        })
    report["restriction_samples"] = samples
    _emit(report, args.out, args.csv)
    return EXIT_OK


def _run_suites(names, args) -> int:
    reports = []
    code = EXIT_OK
    try:
        for name in names:
            fn = SUITES[name]
            kwargs = {"seed": args.seed}
            if name == "mahler":
                kwargs["p"] = args.p
            elif name == "tate":
                kwargs.update(p=args.p, k_max=args.k_max, dmax=args.dmax)
            elif name == "rep":
                kwargs.update(p=args.p)
            elif name == "iwahori":
                kwargs.update(n=args.n, p=args.p, beta=args.beta, budget=args.budget)
            reports.append(fn(**kwargs))
    except BudgetExceeded as err:
        _emit({"error": "budget exceeded", "message": str(err),
               "suites": reports}, args.out)
        return EXIT_BUDGET
    merged = {"suites": reports, "passed": all(r["passed"] for r in reports),
              "seed": args.seed}
    _emit(merged, args.out, args.csv)
    if not merged["passed"]:
        code = EXIT_FALSIFIED
    return code


def _run_interp_factor(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except json.JSONDecodeError as err:
        _emit({"error": "invalid JSON", "message": str(err), "line": err.lineno,
               "column": err.colno}, args.out)
        return EXIT_INPUT
    except OSError as err:
        _emit({"error": "cannot read config", "message": str(err)}, args.out)
        return EXIT_INPUT
    from .characters import PCharacter
    from .cyclotomic import CyclotomicElement
    from .interp import (HalfPowerValue, SatakeData, SmoothCharacter,
                         cpr_identity_check, interpolation_factor)

    try:
        p = cfg["p"]
        n = cfg["n"]
        d = cfg["d"]
        e = list(cfg["e"])
        chis = []
        for item in cfg["characters"]:
            fin = PCharacter.from_log(p, item.get("conductor_exp", 0),
                                      item.get("log", 0))
            at_p = HalfPowerValue(p, CyclotomicElement.from_json(item["at_p"])
                                  if isinstance(item.get("at_p"), dict)
                                  else Fraction(item.get("at_p", 1)))
            chis.append(SmoothCharacter(fin, at_p))
        values = {}
        for key, val in (cfg.get("theta_values") or {}).items():
            tau, i = (int(x) for x in key.split(","))
            values[(tau, i)] = HalfPowerValue(p, Fraction(val))
        data = SatakeData(n, d, p, values or None)
    except (KeyError, TypeError, ValueError) as err:
        _emit({"error": "malformed config", "message": str(err)}, args.out)
        return EXIT_INPUT
    try:
        value = interpolation_factor(data, chis, e, n)
        rep = cpr_identity_check(data, chis, e, n)
    except ValueError as err:
        _emit({"error": "malformed config", "message": str(err)}, args.out)
        return EXIT_INPUT
    vj = value.to_json()
    report = {
        "value": {"coeffs": vj["coeff"]["coeffs"], "field_order": vj["coeff"]["m"],
                  "half_exp": vj["half_exp"], "theta": vj["theta"]},
        "checks": [{"id": "interp.cpr_identity",
                    "description": "both epsilon-factor forms agree",
                    "passed": rep["passed"]}],
    }
    _emit(report, args.out, args.csv)
    return EXIT_OK if rep["passed"] else EXIT_FALSIFIED


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors reported as bad input (exit code 3)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


_GLOBAL_DEFAULTS = {"p": 3, "n": 2, "d": 1, "beta": 1, "seed": 0,
                    "budget": 10 ** 6, "out": None, "csv": False}


def _add_global_flags(parser) -> None:
    # defaults are SUPPRESS so subcommand-position flags do not clobber
    # values given before the subcommand; main() fills the real defaults
    parser.add_argument("--p", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--n", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--d", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--beta", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    parser.add_argument("--out", type=str, default=argparse.SUPPRESS,
                        help="output path (resolved against PADICDESK_OUT_DIR)")
    parser.add_argument("--csv", action="store_true", default=argparse.SUPPRESS,
                        help="also flatten leaf tables to CSV")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="padicdesk",
        description="Exact p-adic desk calculator: branching vectors, Iwahori "
                    "matrix identities, Gauss sums and interpolation factors.")
    _add_global_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_branch = sub.add_parser("branch", help="solve a branching instance")
    p_branch.add_argument("--weight", type=str, help="weight spec JSON file")
    p_branch.add_argument("--weight-json", type=str, help="inline weight spec JSON")
    p_branch.add_argument("--dim-cap", type=int, default=500)
    _add_global_flags(p_branch)

    p_tate = sub.add_parser("tate", help="derivation-calculus identity checks")
    tate_sub = p_tate.add_subparsers(dest="action", required=True, parser_class=_Parser)
    t_verify = tate_sub.add_parser("verify")
    t_verify.add_argument("--k-max", type=int, default=argparse.SUPPRESS)
    t_verify.add_argument("--dmax", type=int, default=argparse.SUPPRESS)
    _add_global_flags(t_verify)

    p_iw = sub.add_parser("iwahori", help="coset and matrix identity checks")
    iw_sub = p_iw.add_subparsers(dest="action", required=True, parser_class=_Parser)
    iw_verify = iw_sub.add_parser("verify")
    _add_global_flags(iw_verify)

    p_interp = sub.add_parser("interp", help="interpolation factor arithmetic")
    interp_sub = p_interp.add_subparsers(dest="action", required=True,
                                         parser_class=_Parser)
    i_factor = interp_sub.add_parser("factor")
    i_factor.add_argument("--config", type=str, required=True)
    _add_global_flags(i_factor)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("--suite", type=str, default="all",
                          choices=sorted(SUITES) + ["all"])
    p_verify.add_argument("--k-max", type=int, default=argparse.SUPPRESS)
    p_verify.add_argument("--dmax", type=int, default=argparse.SUPPRESS)
    _add_global_flags(p_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, default in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, default)
    if not hasattr(args, "k_max"):
        args.k_max = 8
    if not hasattr(args, "dmax"):
        args.dmax = 12
    if args.command == "branch":
        if not args.weight and not args.weight_json:
            parser.error("branch requires --weight or --weight-json")
        return _run_branch(args)
    if args.command == "tate":
        return _run_suites(["tate"], args)
    if args.command == "iwahori":
        return _run_suites(["iwahori"], args)
    if args.command == "interp":
        return _run_interp_factor(args)
    if args.command == "verify":
        names = sorted(SUITES) if args.suite == "all" else [args.suite]
        return _run_suites(names, args)
    parser.error("unknown command")
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
