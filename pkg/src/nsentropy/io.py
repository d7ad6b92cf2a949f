"""File formats, weight-family expressions, and JSON-ready serialization.

Distribution CSV: header ``index,probability``, 1-based contiguous indices.
Weight CSV: header ``index,weight``.  Weight-family expressions:
``const:c=<real>`` | ``power:alpha=<real>`` | ``mandelbrot:alpha=<real>,gamma=<real>``.
Continuous problems arrive as JSON:
``{"beta": "<expression>", "support": [a, b|"inf"], "constraints": {"mean": .., "second_moment": ..}}``.
"""

from __future__ import annotations

import csv
import json
import math

import numpy as np

from .continuous import ConstraintSet, MultiplierSolution, WeightFunction
from .corpus import FitResult, RankFrequencyTable
from .discrete import DiscreteMaxEntSolution, hessian_check
from .entropy import DiscreteDistribution, WeightFamily, WeightVector
from .errors import InputError

__all__ = [
    "read_distribution_csv",
    "read_weights_csv",
    "write_rank_frequency_csv",
    "parse_weight_expr",
    "weight_function_from_expr",
    "parse_support",
    "parse_problem_json",
    "discrete_solution_to_dict",
    "multiplier_solution_to_dict",
    "fit_result_to_dict",
]

_EXPR_PARAMS = {"const": ("c",), "power": ("alpha",), "mandelbrot": ("alpha", "gamma")}


def _read_indexed_column(stream, value_column: str) -> list[float]:
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise InputError("empty file: expected a CSV header") from None
    expected = ["index", value_column]
    if [h.strip().lower() for h in header] != expected:
        raise InputError(f"expected header {','.join(expected)!r}, got {','.join(header)!r}")
    values = []
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise InputError(f"line {line_no}: expected 2 columns, got {len(row)}")
        try:
            index = int(row[0])
            value = float(row[1])
        except ValueError as exc:
            raise InputError(f"line {line_no}: {exc}") from None
        if index != len(values) + 1:
            raise InputError(
                f"line {line_no}: indices must be 1-based and contiguous, got {index}"
            )
        values.append(value)
    if not values:
        raise InputError("no data rows found")
    return values


def read_distribution_csv(stream) -> DiscreteDistribution:
    """Parse an ``index,probability`` CSV into a distribution."""
    return DiscreteDistribution(_read_indexed_column(stream, "probability"))


def read_weights_csv(stream) -> WeightVector:
    """Parse an ``index,weight`` CSV into a weight vector."""
    return WeightVector(_read_indexed_column(stream, "weight"))


def write_rank_frequency_csv(table: RankFrequencyTable, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["rank", "token", "count"])
    for rank, token, count in table.entries:
        writer.writerow([rank, token, count])


def parse_weight_expr(expr: str) -> WeightFamily:
    """Parse ``kind:key=value[,key=value]`` into a weight family."""
    head, sep, tail = expr.partition(":")
    kind = head.strip().lower()
    if not sep or kind not in _EXPR_PARAMS:
        raise InputError(
            f"bad weight expression {expr!r}: expected const:c=, power:alpha= "
            f"or mandelbrot:alpha=,gamma="
        )
    params = {}
    for item in tail.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"bad weight expression {expr!r}: {item!r} is not key=value")
        try:
            params[key.strip().lower()] = float(value)
        except ValueError:
            raise InputError(f"bad weight expression {expr!r}: {value!r} is not a number") from None
    expected = _EXPR_PARAMS[kind]
    if set(params) != set(expected):
        raise InputError(
            f"bad weight expression {expr!r}: {kind} takes exactly {', '.join(expected)}"
        )
    return WeightFamily(kind, params)


def weight_function_from_expr(expr: str, support: tuple[float, float]) -> WeightFunction:
    """The continuous weight function named by a family expression."""
    family = parse_weight_expr(expr)
    if family.kind == "const":
        return WeightFunction.constant(family.params["c"], support)
    if family.kind == "power":
        return WeightFunction.power(family.params["alpha"], support)
    return WeightFunction.mandelbrot(family.params["alpha"], family.params["gamma"], support)


def _parse_bound(text) -> float:
    if isinstance(text, (int, float)):
        return float(text)
    word = str(text).strip().lower()
    if word in ("inf", "+inf", "infinity"):
        return math.inf
    if word in ("-inf", "-infinity"):
        return -math.inf
    try:
        return float(word)
    except ValueError:
        raise InputError(f"bad support bound {text!r}") from None


def parse_support(text: str) -> tuple[float, float]:
    """Parse ``a,b`` where either bound may be (-)inf."""
    parts = str(text).split(",")
    if len(parts) != 2:
        raise InputError(f"support must be 'a,b', got {text!r}")
    return _parse_bound(parts[0]), _parse_bound(parts[1])


def parse_problem_json(source) -> tuple[WeightFunction, ConstraintSet]:
    """Decode a continuous problem description (JSON text or parsed dict)."""
    if isinstance(source, (str, bytes)):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad problem JSON: {exc}") from None
    else:
        obj = source
    if not isinstance(obj, dict):
        raise InputError("problem JSON must be an object")
    try:
        beta_expr = obj["beta"]
        support_raw = obj["support"]
    except KeyError as exc:
        raise InputError(f"problem JSON is missing the {exc.args[0]!r} field") from None
    if not isinstance(support_raw, (list, tuple)) or len(support_raw) != 2:
        raise InputError("problem JSON 'support' must be a [a, b] pair")
    support = (_parse_bound(support_raw[0]), _parse_bound(support_raw[1]))
    beta = weight_function_from_expr(beta_expr, support)
    constraints_raw = obj.get("constraints") or {}
    if not isinstance(constraints_raw, dict):
        raise InputError("problem JSON 'constraints' must be an object")
    unknown = set(constraints_raw) - {"mean", "second_moment"}
    if unknown:
        raise InputError(f"unknown constraint fields: {sorted(unknown)}")
    constraints = ConstraintSet(
        mean=constraints_raw.get("mean"),
        second_moment=constraints_raw.get("second_moment"),
    )
    return beta, constraints


def discrete_solution_to_dict(solution: DiscreteMaxEntSolution) -> dict:
    """Fixed JSON schema for a discrete solution (hessian at the maximizer)."""
    m = solution.maximizer.m
    if m >= 2:
        report = hessian_check(solution.maximizer)
        hessian = {
            "positive_definite": report.positive_definite,
            "determinant": report.determinant,
        }
    else:
        hessian = None
    return {
        "m": m,
        "weights": solution.weights_used.weights.tolist(),
        "maximizer": solution.maximizer.probs.tolist(),
        "max_entropy": solution.max_entropy,
        "hessian": hessian,
    }


def multiplier_solution_to_dict(solution: MultiplierSolution, points: int = 512) -> dict:
    """MultiplierSolution fields plus a density table for plotting."""
    table = solution.density_table(points)
    return {
        "lambda1": solution.lambda1,
        "lambda2": solution.lambda2,
        "lambda3": solution.lambda3,
        "constraint_residuals": np.asarray(solution.constraint_residuals).tolist(),
        "quadrature_error_estimate": solution.quadrature_error_estimate,
        "iterations": solution.iterations,
        "density_table": [[float(x), float(r)] for x, r in table],
    }


def fit_result_to_dict(result: FitResult) -> dict:
    return {
        "alpha": result.alpha,
        "gamma": result.gamma,
        "r2": result.log_log_r2,
        "ks": result.ks_statistic,
        "n_ranks": result.n_ranks_used,
    }
