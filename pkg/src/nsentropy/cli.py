"""Command-line interface.

Subcommands: entropy, maxent-discrete, maxent-continuous, powerlaw, verify,
zipf-fit, rankfreq, tabulate.  Machine-readable results go to stdout (JSON
unless --csv), diagnostics to stderr.  Exit codes: 0 success, 1 domain or
infeasibility errors (and failed verify checks), 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io as nio
from .continuous import ConstraintSet, power_law_density, solve
from .discrete import entropy_monotonicity_scan, solve_discrete_maxent
from .entropy import nonsymmetric_entropy
from .errors import NsentropyError
from .corpus import fit_mandelbrot, fit_zipf, rank_frequency, tokenize
from .oracle import (
    gradient_check,
    grid_search_maxent,
    projected_gradient_maxent,
    theorem4_check_discrete,
)

VERIFY_CHECKS = ("theorem2", "theorem4", "corollary1", "gradient")


def _emit(args, payload: dict) -> None:
    if getattr(args, "csv", False):
        for key, value in _flatten(payload):
            print(f"{key},{value}")
    else:
        print(json.dumps(payload))


def _flatten(value, prefix=""):
    if isinstance(value, dict):
        for key, sub in value.items():
            yield from _flatten(sub, f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(value, (list, tuple)):
        for index, sub in enumerate(value):
            yield from _flatten(sub, f"{prefix}.{index}" if prefix else str(index))
    elif isinstance(value, bool):
        yield prefix, "true" if value else "false"
    elif value is None:
        yield prefix, ""
    elif isinstance(value, float):
        yield prefix, repr(value)
    else:
        yield prefix, str(value)


def _read_text_inputs(paths) -> bytes:
    if not paths or paths == ["-"]:
        return sys.stdin.buffer.read()
    chunks = []
    for path in paths:
        if path == "-":
            chunks.append(sys.stdin.buffer.read())
        else:
            with open(path, "rb") as handle:
                chunks.append(handle.read())
    return b"\n".join(chunks)


def _load_weight_vector(args):
    """Weight vector from --weights-file, or --weights-expr materialized at -m."""
    if args.weights_file is not None:
        if getattr(args, "m", None) is not None:
            args.parser.error("-m only applies to --weights-expr")
        with open(args.weights_file, "r", encoding="utf-8", newline="") as handle:
            return nio.read_weights_csv(handle)
    family = nio.parse_weight_expr(args.weights_expr)
    if getattr(args, "m", None) is None:
        args.parser.error("--weights-expr needs -m to fix the number of events")
    return family.materialize(args.m)


def _cmd_entropy(args) -> int:
    with open(args.dist, "r", encoding="utf-8", newline="") as handle:
        dist = nio.read_distribution_csv(handle)
    if args.weights_file is not None:
        with open(args.weights_file, "r", encoding="utf-8", newline="") as handle:
            weights = nio.read_weights_csv(handle)
    else:
        weights = nio.parse_weight_expr(args.weights_expr).materialize(dist.m)
    value = nonsymmetric_entropy(dist, weights)
    _emit(args, {"m": dist.m, "entropy": value})
    return 0


def _cmd_maxent_discrete(args) -> int:
    weights = _load_weight_vector(args)
    solution = solve_discrete_maxent(weights)
    _emit(args, nio.discrete_solution_to_dict(solution))
    return 0


def _build_continuous_problem(args):
    support = nio.parse_support(args.support)
    beta = nio.weight_function_from_expr(args.weights_expr, support)
    if args.second_moment is not None and args.mean is None:
        args.parser.error("--second-moment requires --mean")
    constraints = ConstraintSet(mean=args.mean, second_moment=args.second_moment)
    return beta, constraints


def _cmd_maxent_continuous(args) -> int:
    beta, constraints = _build_continuous_problem(args)
    solution = solve(beta, constraints)
    _emit(args, nio.multiplier_solution_to_dict(solution, args.points))
    return 0


def _cmd_powerlaw(args) -> int:
    solution = power_law_density(args.alpha, args.k)
    _emit(args, nio.multiplier_solution_to_dict(solution, args.points))
    return 0


def _cmd_tabulate(args) -> int:
    if args.problem is None or args.problem == "-":
        source = sys.stdin.read()
    else:
        with open(args.problem, "r", encoding="utf-8") as handle:
            source = handle.read()
    beta, constraints = nio.parse_problem_json(source)
    solution = solve(beta, constraints)
    for x, rho in solution.density_table(args.points):
        print(f"{x!r}\t{rho!r}")
    return 0


def _cmd_rankfreq(args) -> int:
    table = rank_frequency(tokenize(_read_text_inputs(args.files), args.min_length))
    nio.write_rank_frequency_csv(table, sys.stdout)
    return 0


def _cmd_zipf_fit(args) -> int:
    table = rank_frequency(tokenize(_read_text_inputs(args.files), args.min_length))
    if args.gamma_grid is not None:
        grid = _parse_gamma_grid(args)
        result = fit_mandelbrot(table, grid, max_rank=args.max_rank)
    else:
        result = fit_zipf(table, max_rank=args.max_rank)
    _emit(args, nio.fit_result_to_dict(result))
    return 0


def _parse_gamma_grid(args) -> list[float]:
    parts = args.gamma_grid.split(":")
    if len(parts) != 3:
        args.parser.error("--gamma-grid must be start:stop:step")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        args.parser.error(f"--gamma-grid has non-numeric parts: {args.gamma_grid!r}")
    if step <= 0 or stop < start:
        args.parser.error("--gamma-grid needs step > 0 and stop >= start")
    count = int(round((stop - start) / step))
    grid = [start + i * step for i in range(count + 1) if start + i * step <= stop + 1e-12 * step]
    return grid or [start]


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _check_theorem2(args) -> dict:
    weights = _load_weight_vector(args)
    solution = solve_discrete_maxent(weights)
    grid = grid_search_maxent(weights, args.resolution)
    pg = projected_gradient_maxent(weights, 1e-8)
    identity_error = abs(
        nonsymmetric_entropy(solution.maximizer, weights) - solution.max_entropy
    )
    pg_linf = float(np.abs(pg.best_point.probs - solution.maximizer.probs).max())
    ok = grid.gap >= -1e-9 and pg_linf <= 1e-6 and identity_error <= 1e-12
    return {
        "check": "theorem2",
        "status": "pass" if ok else "fail",
        "metrics": {
            "grid_gap": grid.gap,
            "grid_evaluations": grid.evaluations,
            "projected_gradient_linf": pg_linf,
            "entropy_identity_error": identity_error,
        },
    }


def _check_theorem4(args) -> dict:
    weights = _load_weight_vector(args)
    report = theorem4_check_discrete(weights, args.trials, args.seed)
    ok = report.max_violation <= 1e-12 and report.constancy_spread <= 1e-12
    return {
        "check": "theorem4",
        "status": "pass" if ok else "fail",
        "metrics": {
            "max_violation": report.max_violation,
            "constancy_spread": report.constancy_spread,
            "cross_term": report.cross_term,
            "trials": report.trials,
        },
    }


def _check_corollary1(args) -> dict:
    if args.weights_expr is None:
        args.parser.error("corollary1 needs --weights-expr (a weight family)")
    if args.m is None:
        args.parser.error("corollary1 needs -m as the largest prefix length")
    family = nio.parse_weight_expr(args.weights_expr)
    scan = entropy_monotonicity_scan(family, args.m)
    increments = np.diff(scan)
    min_increment = float(increments.min()) if increments.size else None
    ok = bool(np.all(increments > 0)) if increments.size else True
    return {
        "check": "corollary1",
        "status": "pass" if ok else "fail",
        "metrics": {"m_max": args.m, "min_increment": min_increment},
    }


def _check_gradient(args) -> dict:
    weights = _load_weight_vector(args)
    worst = gradient_check(weights, points=args.trials, seed=args.seed)
    return {
        "check": "gradient",
        "status": "pass" if worst <= 1e-5 else "fail",
        "metrics": {"max_relative_error": worst, "points": args.trials},
    }


def _cmd_verify(args) -> int:
    checks = VERIFY_CHECKS if args.check == "all" else (args.check,)
    if args.seed is None and any(c in ("theorem4", "gradient") for c in checks):
        args.parser.error("--seed is required for stochastic checks (theorem4, gradient)")
    runners = {
        "theorem2": _check_theorem2,
        "theorem4": _check_theorem4,
        "corollary1": _check_corollary1,
        "gradient": _check_gradient,
    }
    all_pass = True
    for name in checks:
        report = runners[name](args)
        print(json.dumps(report))
        all_pass = all_pass and report["status"] == "pass"
    return 0 if all_pass else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_weight_source(sub, require=True):
    group = sub.add_mutually_exclusive_group(required=require)
    group.add_argument("--weights-file", metavar="PATH",
                       help="CSV of index,weight")
    group.add_argument("--weights-expr", metavar="EXPR",
                       help="const:c= | power:alpha= | mandelbrot:alpha=,gamma=")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsentropy",
        description="Weighted entropy, maximum-entropy solvers, and rank-frequency fits.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("entropy", help="weighted entropy of a distribution file")
    sub.add_argument("--dist", required=True, metavar="PATH",
                     help="CSV of index,probability")
    _add_weight_source(sub)
    sub.add_argument("--csv", action="store_true", help="flat key,value output")
    sub.set_defaults(func=_cmd_entropy)

    sub = subs.add_parser("maxent-discrete", help="closed-form discrete maximizer")
    _add_weight_source(sub)
    sub.add_argument("-m", type=int, metavar="M", help="events for --weights-expr")
    sub.add_argument("--csv", action="store_true", help="flat key,value output")
    sub.set_defaults(func=_cmd_maxent_discrete)

    sub = subs.add_parser("maxent-continuous", help="constrained continuous maximizer")
    sub.add_argument("--weights-expr", required=True, metavar="EXPR")
    sub.add_argument("--support", required=True, metavar="A,B",
                     help="interval, e.g. 0,inf or =-inf,inf")
    sub.add_argument("--mean", type=float, metavar="MU")
    sub.add_argument("--second-moment", type=float, metavar="S2",
                     help="raw second moment (needs --mean)")
    sub.add_argument("--points", type=int, default=512, metavar="N")
    sub.add_argument("--csv", action="store_true", help="flat key,value output")
    sub.set_defaults(func=_cmd_maxent_continuous)

    sub = subs.add_parser("powerlaw", help="power-law density from x^alpha weights")
    sub.add_argument("--alpha", type=float, required=True)
    sub.add_argument("--k", type=float, required=True, help="left edge of the support")
    sub.add_argument("--points", type=int, default=512, metavar="N")
    sub.add_argument("--csv", action="store_true", help="flat key,value output")
    sub.set_defaults(func=_cmd_powerlaw)

    sub = subs.add_parser("verify", help="run the closed-form verification oracles")
    sub.add_argument("check", nargs="?", default="all",
                     choices=VERIFY_CHECKS + ("all",))
    _add_weight_source(sub)
    sub.add_argument("-m", type=int, metavar="M")
    sub.add_argument("--trials", type=int, default=1000, metavar="N")
    sub.add_argument("--seed", type=int, metavar="SEED")
    sub.add_argument("--resolution", type=int, default=400, metavar="R")
    sub.set_defaults(func=_cmd_verify)

    sub = subs.add_parser("zipf-fit", help="fit rank-frequency exponents from text")
    sub.add_argument("files", nargs="*", metavar="FILE", help="text files (default stdin)")
    sub.add_argument("--max-rank", type=int, metavar="N")
    sub.add_argument("--gamma-grid", metavar="START:STOP:STEP",
                     help="fit the shifted (Mandelbrot) law over this gamma grid")
    sub.add_argument("--min-length", type=int, default=1, metavar="L")
    sub.add_argument("--csv", action="store_true", help="flat key,value output")
    sub.set_defaults(func=_cmd_zipf_fit)

    sub = subs.add_parser("rankfreq", help="rank-frequency CSV from text")
    sub.add_argument("files", nargs="*", metavar="FILE", help="text files (default stdin)")
    sub.add_argument("--min-length", type=int, default=1, metavar="L")
    sub.set_defaults(func=_cmd_rankfreq)

    sub = subs.add_parser("tabulate", help="density table for a continuous problem JSON")
    sub.add_argument("problem", nargs="?", metavar="FILE",
                     help="problem description JSON (default stdin)")
    sub.add_argument("--points", type=int, default=512, metavar="N")
    sub.set_defaults(func=_cmd_tabulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # hand subcommands their parser so semantic flag conflicts exit with code 2
    args.parser = parser
    try:
        return args.func(args)
    except NsentropyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
