import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence
from option import Result
from threepoint_gauge.algebra import FormConfig, bracket_gauge, parse_label, render, to_json
from threepoint_gauge.errors import ParseError, StepBudgetExceeded
from threepoint_gauge.fock import HeisenbergParams
from threepoint_gauge.formal import mode_bracket, relation_library, relation_to_json
from threepoint_gauge.harness import VerificationClient
from threepoint_gauge.kahler import d3_character, mu_grid, reduce, render_omega
from threepoint_gauge.realization import RealizationParams
from threepoint_gauge.ring import parse_relem, parse_scalar
from threepoint_gauge.verify.schema import ALL_SUITES, SuiteConfig

"""Command-line front end.

    threepoint verify --suite mu,d3 --format json
    threepoint reduce "t^2" "t^-1*u"
    threepoint mu-table 3
    threepoint bracket "e@t^2" "d1@3"
    threepoint char
    threepoint relation currentalgebra1 1 -2
    threepoint plan suites.yml

Exit codes: 0 ok, 1 a stage-1 check failed, 2 bad input, 3 step budget exceeded.
"""

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class _Abort(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ========================
# Argumentos
# ========================
def _rational(text: str):
    try:
        return parse_scalar(text)
    except ParseError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _rational_triple(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three rationals 'a,b,c', got {text!r}")
    return tuple(_rational(p) for p in parts)


def _suite_list(text: str) -> List[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in names if s not in ALL_SUITES]
    if unknown or not names:
        raise argparse.ArgumentTypeError(f"unknown suite(s) {unknown or text!r}; choose from {', '.join(ALL_SUITES)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    # flags shared by every subcommand, given after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=int, choices=(0, 1), default=None,
                        help="normal-ordering convention (default: r = 1, current and virasoro run both)")
    common.add_argument("--kappa0", type=_rational, default=_rational("1"), help="level κ₀ (non-zero)")
    common.add_argument("--b0", type=_rational, default=_rational("0"), help="B₀")
    common.add_argument("--b1", type=_rational_triple, default=None, help="B¹₀₀=B¹₁₁,B¹₀₁,B¹₁₀")
    common.add_argument("--modes", type=int, default=2, help="mode range M, modes in [−M, M]")
    common.add_argument("--degree", type=int, default=2, help="degree bound of random test vectors")
    common.add_argument("--vectors", type=int, default=8, help="number of seeded random test vectors")
    common.add_argument("--seed", type=int, default=None, help="random seed (default THREEPOINT_SEED)")
    common.add_argument("--suite", type=_suite_list, default=None, help="comma-separated suites (default all)")
    common.add_argument("--form-scale", type=_rational, default=None, help="invariant form scale (default calibrated)")
    common.add_argument("--out", type=Path, default=None, help="write the output here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--exhaustive", action="store_true",
                        help="heisenberg suite sweeps every monomial of degree ≤ 3, indices in [−4, 4]")

    ap = argparse.ArgumentParser(prog="threepoint",
                                 description="Exact verification of the three-point gauge algebra and its realizations.")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run verification suites")
    p = sub.add_parser("reduce", parents=[common], help="class of F dG in Ω_R/dR")
    p.add_argument("f")
    p.add_argument("g")
    p = sub.add_parser("mu-table", parents=[common], help="μ_{k,l} for k, l in [−K, K]")
    p.add_argument("K", type=int)
    p = sub.add_parser("bracket", parents=[common], help="bracket of two basis labels")
    p.add_argument("a")
    p.add_argument("b")
    sub.add_parser("char", parents=[common], help="character of D₃ on Ω_R/dR")
    p = sub.add_parser("relation", parents=[common], help="mode bracket of a generating-function relation")
    p.add_argument("name")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p = sub.add_parser("plan", parents=[common], help="run a YAML verification plan")
    p.add_argument("path", type=Path)
    return ap


def suite_config(args: argparse.Namespace) -> SuiteConfig:
    """SuiteConfig from the global flags; realization parameters use the gauge constraint set around κ₀."""
    b1 = args.b1 or (0, 0, 0)
    heis = HeisenbergParams(kappa0=args.kappa0, B0=args.b0, B1_00=b1[0], B1_01=b1[1], B1_10=b1[2])
    r = 1 if args.r is None else args.r
    params = RealizationParams.gauge_defaults(args.kappa0, r=r, heis=heis)
    data = dict(modes=args.modes, degree=args.degree, vectors=args.vectors, params=params,
                form_scale=args.form_scale, exhaustive=args.exhaustive)
    if args.r is not None:
        data["orderings"] = [args.r]
    if args.seed is not None:
        data["seed"] = args.seed
    if args.suite is not None:
        data["suites"] = args.suite
    return SuiteConfig.model_validate(data)


def _unwrap(res: Result):
    if res.is_ok:
        return res.unwrap()
    err = res.unwrap_err()
    if isinstance(err, StepBudgetExceeded):
        raise _Abort(EXIT_BUDGET, f"step budget exceeded: {err}")
    if isinstance(err, (ValueError, FileNotFoundError)):
        raise _Abort(EXIT_INPUT, str(err))
    raise err


# ========================
# Subcomandos
# ========================
def _cmd_verify(args) -> tuple:
    summary = _unwrap(VerificationClient(suite_config(args)).run())
    body = json.dumps(summary.to_json(), ensure_ascii=False, indent=2) if args.format == "json" \
        else summary.render_text()
    return body, EXIT_OK if summary.passed else EXIT_FAIL


def _cmd_plan(args) -> tuple:
    summaries = _unwrap(VerificationClient().interpret(str(args.path)))
    passed = all(s.passed for s in summaries.values())
    if args.format == "json":
        body = json.dumps({name: s.to_json() for name, s in sorted(summaries.items())}, ensure_ascii=False, indent=2)
    else:
        body = "\n".join(f"== {name}\n{s.render_text()}" for name, s in sorted(summaries.items()))
    return body, EXIT_OK if passed else EXIT_FAIL


def _cmd_reduce(args) -> tuple:
    f = _unwrap(parse_relem(args.f))
    g = _unwrap(parse_relem(args.g))
    omega = reduce(f, g)
    if args.format == "json":
        body = json.dumps({"w0": str(omega.c0), "w1": str(omega.c1), "text": render_omega(omega)})
    else:
        body = render_omega(omega)
    return body, EXIT_OK


def _cmd_mu_table(args) -> tuple:
    if args.K < 0:
        raise _Abort(EXIT_INPUT, "K must be non-negative")
    grid = mu_grid(args.K)
    if args.format == "json":
        return json.dumps(grid), EXIT_OK
    return "\n".join(f"{g['k']} {g['l']} {g['num']}/{g['den']}" for g in grid), EXIT_OK


def _cmd_bracket(args) -> tuple:
    a = _unwrap(parse_label(args.a))
    b = _unwrap(parse_label(args.b))
    out = bracket_gauge(a, b, FormConfig(scale=args.form_scale or 1))
    body = json.dumps(to_json(out), ensure_ascii=False) if args.format == "json" else render(out)
    return body, EXIT_OK


def _cmd_char(args) -> tuple:
    character = d3_character()
    if args.format == "json":
        return json.dumps({"id": str(character[0]), "psi": str(character[1]), "tau2": str(character[2])}), EXIT_OK
    return ", ".join(str(c) for c in character), EXIT_OK


def _cmd_relation(args) -> tuple:
    lib = relation_library()
    if args.name not in lib:
        raise _Abort(EXIT_INPUT, f"unknown relation {args.name!r}; choose from {', '.join(sorted(lib))}")
    terms = mode_bracket(lib[args.name], args.m, args.n)
    if args.format == "json":
        payload = {
            "relation": relation_to_json(lib[args.name]),
            "m": args.m,
            "n": args.n,
            "terms": [{"name": name, "mode": mode, "num": c.numerator, "den": c.denominator}
                      for (name, mode), c in terms],
        }
        return json.dumps(payload, ensure_ascii=False), EXIT_OK
    lines = [f"{c} {name}" + (f"_{mode}" if mode is not None else "") for (name, mode), c in terms]
    return "\n".join(lines) or "0", EXIT_OK


_COMMANDS = {
    "verify": _cmd_verify,
    "plan": _cmd_plan,
    "reduce": _cmd_reduce,
    "mu-table": _cmd_mu_table,
    "bracket": _cmd_bracket,
    "char": _cmd_char,
    "relation": _cmd_relation,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse `argv`, run the subcommand and return its exit code."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        body, code = _COMMANDS[args.command](args)
    except _Abort as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except StepBudgetExceeded as e:
        print(f"error: step budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.out is not None:
        args.out.write_text(body + "\n", encoding="utf-8")
    else:
        print(body)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
