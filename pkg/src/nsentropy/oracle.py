"""Brute-force and first-principles checks of the closed-form solutions.

Nothing here trusts the solver formulas: the grid search covers every
rational grid point of the simplex at a given resolution, the projected
gradient ascends the entropy directly, and the maximum-principle checks
verify the defining property (the cross term -sum p ln(beta p0) is the
same constant for every distribution, hence p0 is the maximizer) on
randomly sampled distributions.

Randomness comes from a deliberately tiny 64-bit linear congruential
generator (Knuth's MMIX multiplier) so that published check reports can be
reproduced bit for bit from the seed alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .continuous import MultiplierSolution, continuous_entropy
from .discrete import solve_discrete_maxent
from .entropy import DiscreteDistribution, WeightVector
from .errors import ConvergenceError, DomainError, InfeasibleError
from .quadrature import DEFAULT_TOL, integrate

__all__ = [
    "OracleReport",
    "Theorem4Report",
    "grid_search_maxent",
    "projected_gradient_maxent",
    "sample_simplex",
    "theorem4_check_discrete",
    "gradient_check",
    "DensityPerturbation",
    "constraint_preserving_perturbations",
    "theorem4_check_continuous",
]

GRID_SEARCH_MAX_M = 6
#: above this many grid points the exact separable dynamic program replaces
#: literal enumeration (identical max and argmax, full coverage either way)
ENUMERATION_LIMIT = 2_000_000


# ---------------------------------------------------------------------------
# seeded randomness
# ---------------------------------------------------------------------------

_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_LCG_MASK = (1 << 64) - 1


class Lcg:
    """64-bit LCG: state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64).

    Uniform deviates are the top 53 bits, offset by half an ulp so the open
    interval (0, 1) is never left.  Statistically modest but fully
    specified, which is what reproducible oracle reports need.
    """

    def __init__(self, seed: int):
        self.state = int(seed) & _LCG_MASK

    def uniform(self) -> float:
        self.state = (self.state * _LCG_MULT + _LCG_INC) & _LCG_MASK
        return ((self.state >> 11) + 0.5) / 2.0**53

    def exponential(self) -> float:
        return -math.log(1.0 - self.uniform())


def _sample_simplex_array(m: int, count: int, seed: int) -> np.ndarray:
    """(count, m) array of uniform simplex points via exponential spacings."""
    rng = Lcg(seed)
    out = np.empty((count, m))
    for row in range(count):
        for col in range(m):
            out[row, col] = rng.exponential()
    out /= out.sum(axis=1, keepdims=True)
    return out


def sample_simplex(m: int, count: int, seed: int) -> list[DiscreteDistribution]:
    """`count` points uniform on the (m-1)-simplex; deterministic in the seed."""
    if m < 1 or count < 1:
        raise DomainError("sample_simplex needs m >= 1 and count >= 1")
    return [DiscreteDistribution(row) for row in _sample_simplex_array(m, count, seed)]


# ---------------------------------------------------------------------------
# raw entropy helpers (no simplex constraint; used by grid/gradient/PG paths)
# ---------------------------------------------------------------------------

def _entropy_raw(p: np.ndarray, beta: np.ndarray) -> float:
    """-sum p ln(beta p) for any non-negative vector, 0 ln 0 = 0."""
    pos = p > 0
    return float(-(p[pos] * np.log(beta[pos] * p[pos])).sum())


def _entropy_rows(rows: np.ndarray, beta: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = -rows * np.log(beta * rows)
    return np.where(rows > 0, terms, 0.0).sum(axis=1)


# ---------------------------------------------------------------------------
# grid search
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OracleReport:
    """Outcome of one independent maximization, against the closed form."""

    best_point: DiscreteDistribution
    best_value: float
    closed_form_value: float
    gap: float
    evaluations: int


def _term_tables(weights: np.ndarray, resolution: int) -> np.ndarray:
    """tables[i, c] = per-coordinate entropy term for p_i = c/resolution."""
    counts = np.arange(resolution + 1, dtype=float)
    p = counts / resolution
    tables = np.empty((weights.size, resolution + 1))
    with np.errstate(divide="ignore", invalid="ignore"):
        for i, b in enumerate(weights):
            tables[i] = np.where(counts > 0, -p * np.log(b * p), 0.0)
    return tables


def _grid_best_enumerate(tables: np.ndarray, resolution: int) -> tuple[float, np.ndarray]:
    """Literal enumeration of every composition (prefix loops in Python,
    the final two coordinates vectorized)."""
    m = tables.shape[0]
    r = resolution
    if m == 1:
        return float(tables[0, r]), np.array([r])
    best_value = -np.inf
    best = None
    counts = np.arange(r + 1)

    def recurse(coord: int, remaining: int, prefix_value: float, prefix: list[int]):
        nonlocal best_value, best
        if coord == m - 2:
            c = counts[: remaining + 1]
            values = prefix_value + tables[coord, c] + tables[coord + 1, remaining - c]
            idx = int(np.argmax(values))
            if values[idx] > best_value:
                best_value = float(values[idx])
                best = prefix + [idx, remaining - idx]
            return
        for c in range(remaining + 1):
            recurse(coord + 1, remaining - c, prefix_value + tables[coord, c], prefix + [c])

    recurse(0, r, 0.0, [])
    return best_value, np.asarray(best)


def _grid_best_dp(tables: np.ndarray, resolution: int) -> tuple[float, np.ndarray]:
    """Exact grid maximum by dynamic programming over the separable terms.

    best[j, r] = max over allocations of r among coordinates 0..j; every
    composition is covered by exactly one DP path, so the maximum (and its
    argmax, recovered by backtracking) equal literal enumeration's.
    """
    m = tables.shape[0]
    r_max = resolution
    best = tables[0].copy()
    choice = np.zeros((m, r_max + 1), dtype=int)
    choice[0] = np.arange(r_max + 1)
    for j in range(1, m):
        new_best = np.empty(r_max + 1)
        for r in range(r_max + 1):
            cand = tables[j, : r + 1] + best[r::-1]
            c = int(np.argmax(cand))
            new_best[r] = cand[c]
            choice[j, r] = c
        best = new_best
    counts = np.zeros(m, dtype=int)
    r = r_max
    for j in range(m - 1, 0, -1):
        counts[j] = choice[j, r]
        r -= counts[j]
    counts[0] = r
    return float(best[r_max]), counts


def grid_search_maxent(weights: WeightVector, resolution: int) -> OracleReport:
    """Best entropy over all distributions with p_i = c_i/resolution.

    Covers every composition of `resolution` into m parts (full coverage at
    the stated grid step, never sampling), so for the concave entropy the
    winner is within 2/resolution of the true maximizer in L-infinity.
    """
    m = weights.m
    if m > GRID_SEARCH_MAX_M:
        raise DomainError(
            f"grid search is limited to m <= {GRID_SEARCH_MAX_M} events, got m={m}"
        )
    if resolution < 10:
        raise DomainError(f"grid resolution must be >= 10, got {resolution}")
    tables = _term_tables(weights.weights, resolution)
    points_covered = math.comb(resolution + m - 1, m - 1)
    if points_covered <= ENUMERATION_LIMIT:
        best_value, counts = _grid_best_enumerate(tables, resolution)
    else:
        best_value, counts = _grid_best_dp(tables, resolution)
    closed = solve_discrete_maxent(weights).max_entropy
    return OracleReport(
        best_point=DiscreteDistribution(counts / resolution),
        best_value=best_value,
        closed_form_value=closed,
        gap=closed - best_value,
        evaluations=points_covered,
    )


# ---------------------------------------------------------------------------
# projected gradient ascent
# ---------------------------------------------------------------------------

def project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Exact Euclidean projection onto the probability simplex (sort-based)."""
    u = np.sort(v)[::-1]
    cumsum = np.cumsum(u)
    rho = np.nonzero(u + (1.0 - cumsum) / np.arange(1, v.size + 1) > 0)[0][-1]
    tau = (1.0 - cumsum[rho]) / (rho + 1.0)
    return np.maximum(v + tau, 0.0)


_PG_FLOOR = 1e-12


def projected_gradient_maxent(weights: WeightVector, tol: float,
                              max_iter: int = 10000) -> OracleReport:
    """Maximize the entropy by projected gradient ascent from the uniform point.

    Gradient: dS/dp_i = -ln(beta_i p_i) - 1.  Each step backtracks until the
    entropy increases; iterates touching the boundary are nudged up to 1e-12
    before logs are taken.  Stops when both the movement and the
    projected-gradient norm fall below tol.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    beta = weights.weights
    m = weights.m
    p = np.full(m, 1.0 / m)
    evaluations = 0
    closed = solve_discrete_maxent(weights)

    def nudge(q: np.ndarray) -> np.ndarray:
        q = np.maximum(q, _PG_FLOOR)
        return q / q.sum()

    value = _entropy_raw(p, beta)
    for iteration in range(1, max_iter + 1):
        grad = -np.log(beta * p) - 1.0
        direction = project_to_simplex(p + grad) - p
        grad_proj_norm = float(np.abs(direction).max())
        step = 1.0
        moved = None
        while step > 1e-15:
            cand = nudge(project_to_simplex(p + step * grad))
            evaluations += 1
            cand_value = _entropy_raw(cand, beta)
            if cand_value >= value + 1e-4 * step * float(grad @ (cand - p)) and cand_value >= value:
                moved = cand
                break
            step *= 0.5
        if moved is None:
            movement = 0.0
        else:
            movement = float(np.abs(moved - p).max())
            p, value = moved, cand_value
        if movement < tol and grad_proj_norm < tol:
            best = DiscreteDistribution(p)
            return OracleReport(
                best_point=best,
                best_value=_entropy_raw(best.probs, beta),
                closed_form_value=closed.max_entropy,
                gap=closed.max_entropy - value,
                evaluations=evaluations,
            )
    raise ConvergenceError(
        f"projected gradient did not reach tol={tol} within {max_iter} iterations",
        last_iterate=p,
    )


# ---------------------------------------------------------------------------
# maximum-principle checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Theorem4Report:
    """Empirical check that the cross term is flat and the maximizer wins."""

    max_violation: float
    constancy_spread: float
    cross_term: float
    trials: int


def theorem4_check_discrete(weights: WeightVector, trials: int, seed: int) -> Theorem4Report:
    """Sample distributions and test the maximum principle directly.

    For every sampled p: S(p) must not exceed S(p0), and the cross term
    -sum_i p(i) ln(beta_i p0(i)) must be the same constant (it is, exactly,
    because beta_i p0(i) does not depend on i at the closed-form maximizer).
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    solution = solve_discrete_maxent(weights)
    p0 = solution.maximizer.probs
    beta = weights.weights
    samples = _sample_simplex_array(weights.m, trials, seed)
    entropies = _entropy_rows(samples, beta)
    log_bp0 = np.log(beta * p0)
    cross = -(samples @ log_bp0)
    return Theorem4Report(
        max_violation=float((entropies - solution.max_entropy).max()),
        constancy_spread=float(cross.max() - cross.min()),
        cross_term=float(cross.mean()),
        trials=trials,
    )


def gradient_check(weights: WeightVector, points: int = 100, seed: int = 0,
                   step: float = 1e-6) -> float:
    """Worst relative gap between the analytic gradient and central differences.

    The entropy is evaluated off the simplex (no renormalization), so the
    finite differences probe exactly the function whose gradient is
    -ln(beta_i p_i) - 1.  Returns max_i |analytic - fd| / max(1, |analytic|)
    over all sampled interior points.
    """
    beta = weights.weights
    samples = _sample_simplex_array(weights.m, points, seed)
    worst = 0.0
    for p in samples:
        p = np.maximum(p, 1e-6)  # keep the FD stencil well inside the domain
        analytic = -np.log(beta * p) - 1.0
        fd = np.empty_like(analytic)
        for i in range(p.size):
            bumped_up = p.copy()
            bumped_dn = p.copy()
            bumped_up[i] += step
            bumped_dn[i] -= step
            fd[i] = (_entropy_raw(bumped_up, beta) - _entropy_raw(bumped_dn, beta)) / (2 * step)
        scale = max(1.0, float(np.abs(analytic).max()))
        worst = max(worst, float(np.abs(analytic - fd).max()) / scale)
    return worst


# ---------------------------------------------------------------------------
# continuous maximum-principle harness
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DensityPerturbation:
    """A density rho0 (1 + scale * h) staying in the solution's constraint class.

    h is bounded with int x^k rho0 h dx = 0 for every constrained moment k,
    and |scale * h| <= 1/2 everywhere, so the perturbed density is positive
    and satisfies the same constraints as rho0.
    """

    solution: MultiplierSolution
    h: object  # vectorized callable
    max_scale: float

    def density(self, scale: float | None = None):
        s = self.max_scale if scale is None else scale
        if abs(s) > self.max_scale:
            raise DomainError(f"|scale| must be <= {self.max_scale}")

        def rho(x, s=s):
            return self.solution.density(x) * (1.0 + s * self.h(x))

        return rho


def _unit_coordinate(support: tuple[float, float]):
    """Map the support onto a bounded coordinate for building test waves."""
    a, b = support
    if np.isfinite(a) and np.isfinite(b):
        return lambda x: (np.asarray(x, dtype=float) - a) / (b - a)
    if np.isfinite(a):
        return lambda x: (x - a) / (1.0 + (x - a))
    if np.isfinite(b):
        return lambda x: (b - x) / (1.0 + (b - x))
    return lambda x: np.asarray(x, dtype=float) / (1.0 + np.abs(x))


def _constrained_orders(solution: MultiplierSolution) -> list[int]:
    orders = [0]
    if solution.lambda2 is not None:
        orders.append(1)
    if solution.lambda3 is not None:
        orders.append(2)
    return orders


def constraint_preserving_perturbations(solution: MultiplierSolution, count: int,
                                        seed: int) -> list[DensityPerturbation]:
    """Random bounded perturbation directions orthogonal to the constraints.

    Each direction is a combination of sinusoids of the bounded support
    coordinate; the combination coefficients solve the small linear system
    that zeroes every constrained moment of rho0 * h.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    rng = Lcg(seed)
    orders = _constrained_orders(solution)
    a, b = solution.beta.support
    coord = _unit_coordinate(solution.beta.support)
    rho0 = solution.density
    out: list[DensityPerturbation] = []
    attempts = 0
    while len(out) < count and attempts < 20 * count:
        attempts += 1
        waves = []
        for _ in range(len(orders) + 1):
            omega = 2.0 + 18.0 * rng.uniform()
            phase = 2.0 * math.pi * rng.uniform()
            waves.append((omega, phase))

        def wave(j, x):
            omega, phase = waves[j]
            return np.sin(math.pi * omega * coord(x) + phase)

        gram = np.empty((len(orders), len(orders)))
        rhs = np.empty(len(orders))
        fine = True
        for row, k in enumerate(orders):
            for col in range(len(orders)):
                value, err = integrate(
                    lambda x, k=k, col=col: x**k * rho0(x) * wave(col + 1, x), a, b,
                    DEFAULT_TOL,
                )
                if not np.isfinite(value) or err > 1e-6:
                    fine = False
                    break
                gram[row, col] = value
            if not fine:
                break
            value, err = integrate(lambda x, k=k: x**k * rho0(x) * wave(0, x), a, b,
                                   DEFAULT_TOL)
            rhs[row] = -value
        if not fine or np.linalg.cond(gram) > 1e10:
            continue
        coeff = np.linalg.solve(gram, rhs)

        def h(x, waves=tuple(waves), coeff=coeff):
            t = coord(x)
            total = np.sin(math.pi * waves[0][0] * t + waves[0][1])
            for j, c in enumerate(coeff):
                total = total + c * np.sin(math.pi * waves[j + 1][0] * t + waves[j + 1][1])
            return total

        bound = 1.0 + float(np.abs(coeff).sum())
        out.append(DensityPerturbation(solution=solution, h=h, max_scale=0.5 / bound))
    if len(out) < count:
        raise InfeasibleError("could not build enough well-conditioned perturbations")
    return out


def theorem4_check_continuous(solution: MultiplierSolution, trials: int = 50,
                              seed: int = 0) -> Theorem4Report:
    """Maximality and cross-term constancy over perturbed in-class densities.

    The cross term -int rho ln(beta rho0) dx must agree across all tested
    densities (ln(beta rho0) is an affine function of the constrained
    moments), and no in-class density may beat S(rho0).
    """
    beta = solution.beta
    a, b = beta.support
    rho0 = solution.density
    s0 = continuous_entropy(rho0, beta)

    def cross_term(rho):
        def integrand(x):
            r = np.asarray(rho(x), dtype=float)
            out = np.zeros_like(r)
            pos = r > 0
            if pos.any():
                xp = np.asarray(x, dtype=float)[pos]
                out[pos] = -r[pos] * np.log(beta(xp) * rho0(xp))
            return out

        value, _ = integrate(integrand, a, b, DEFAULT_TOL)
        return value

    crosses = [s0]
    max_violation = 0.0
    for pert in constraint_preserving_perturbations(solution, trials, seed):
        rho = pert.density()
        entropy = continuous_entropy(rho, beta)
        max_violation = max(max_violation, entropy - s0)
        crosses.append(cross_term(rho))
    crosses = np.asarray(crosses)
    return Theorem4Report(
        max_violation=max_violation,
        constancy_spread=float(crosses.max() - crosses.min()),
        cross_term=float(crosses.mean()),
        trials=trials,
    )
