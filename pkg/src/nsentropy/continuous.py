"""Constrained maximization of the continuous weighted entropy.

For a positive weight function beta(x) on a support interval, the density
maximizing S(rho) = -int rho ln(beta rho) dx subject to normalization and
optional mean / raw-second-moment constraints has the exponential-family
form

    rho0(x) = (1/beta(x)) * exp(1 - lambda1 - lambda2*x - lambda3*x^2),

where the multipliers are fixed by the constraint integrals.  lambda1 is
eliminated analytically through normalization at every step; the remaining
one or two multipliers are found by damped Newton iteration on the
constraint residual map, with a bisection fallback on a bracket located by
geometric scanning.  All integrals use the adaptive Gauss-Kronrod engine
from :mod:`nsentropy.quadrature` with a 1e-10 absolute target.

With no moment constraints the maximizer is rho0 = C/beta whenever
int 1/beta converges (C the reciprocal of that integral); beta(x) = x^alpha
on [k, inf) then gives the continuous power law (alpha-1) k^(alpha-1)
x^(-alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, InfeasibleError
from .quadrature import DEFAULT_TOL, integrate

__all__ = [
    "WeightFunction",
    "ConstraintSet",
    "MultiplierSolution",
    "solve_unconstrained",
    "solve_with_mean",
    "solve_with_mean_and_second_moment",
    "solve",
    "power_law_density",
    "continuous_entropy",
    "tabulated_density",
]

#: an integral whose error estimate exceeds this (relative) share is treated
#: as not converged, i.e. divergent for feasibility purposes
DIVERGENCE_RTOL = 1e-6

#: Newton/bisection convergence target on each scaled constraint residual
RESIDUAL_RTOL = 1e-11

MAX_NEWTON_ITER = 100
MAX_BISECT_ITER = 200


def _check_support(a: float, b: float) -> tuple[float, float]:
    a, b = float(a), float(b)
    if math.isnan(a) or math.isnan(b) or not a < b:
        raise DomainError(f"support must be an interval with a < b, got ({a}, {b})")
    return a, b


@dataclass(frozen=True, eq=False)
class WeightFunction:
    """Parametric positive weight beta(x) on a support interval.

    kind "const":      beta(x) = c on [a, b]; the only kind allowed on
                       intervals unbounded below
    kind "power":      beta(x) = x**alpha, requires a > 0
    kind "mandelbrot": beta(x) = (x+gamma)**alpha, requires a + gamma > 0
    kind "tabulated":  linear interpolation of (x, beta) pairs on a bounded
                       support
    """

    kind: str
    support: tuple[float, float]
    params: dict

    @classmethod
    def constant(cls, c: float, support: tuple[float, float]) -> "WeightFunction":
        a, b = _check_support(*support)
        if not np.isfinite(c) or c <= 0:
            raise DomainError("constant weight needs c > 0")
        return cls("const", (a, b), {"c": float(c)})

    @classmethod
    def power(cls, alpha: float, support: tuple[float, float]) -> "WeightFunction":
        a, b = _check_support(*support)
        if not np.isfinite(alpha):
            raise DomainError("power weight needs a finite alpha")
        if not a > 0:
            raise DomainError("power weight x**alpha needs support with a > 0")
        return cls("power", (a, b), {"alpha": float(alpha)})

    @classmethod
    def mandelbrot(cls, alpha: float, gamma: float,
                   support: tuple[float, float]) -> "WeightFunction":
        a, b = _check_support(*support)
        if not np.isfinite(alpha) or not np.isfinite(gamma):
            raise DomainError("mandelbrot weight needs finite alpha and gamma")
        if not a + gamma > 0:
            raise DomainError("mandelbrot weight (x+gamma)**alpha needs a + gamma > 0")
        return cls("mandelbrot", (a, b), {"alpha": float(alpha), "gamma": float(gamma)})

    @classmethod
    def tabulated(cls, xs, betas) -> "WeightFunction":
        xs = np.asarray(xs, dtype=float)
        betas = np.asarray(betas, dtype=float)
        if xs.ndim != 1 or xs.size < 2 or xs.shape != betas.shape:
            raise DomainError("tabulated weight needs matching 1-D grids with >= 2 points")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(betas))):
            raise DomainError("tabulated weight grids must be finite")
        if np.any(np.diff(xs) <= 0):
            raise DomainError("tabulated weight grid must be strictly increasing in x")
        if np.any(betas <= 0):
            raise DomainError("tabulated weight values must be positive")
        xs = xs.copy(); xs.setflags(write=False)
        betas = betas.copy(); betas.setflags(write=False)
        return cls("tabulated", (float(xs[0]), float(xs[-1])), {"xs": xs, "betas": betas})

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "const":
            return np.full_like(x, self.params["c"])
        if self.kind == "power":
            return x ** self.params["alpha"]
        if self.kind == "mandelbrot":
            return (x + self.params["gamma"]) ** self.params["alpha"]
        return np.interp(x, self.params["xs"], self.params["betas"])


@dataclass(frozen=True)
class ConstraintSet:
    """Optional mean and raw second moment (int x^2 rho dx, not the variance)."""

    mean: float | None = None
    second_moment: float | None = None

    def __post_init__(self):
        if self.mean is not None and not np.isfinite(self.mean):
            raise DomainError("mean constraint must be finite")
        if self.second_moment is not None and not np.isfinite(self.second_moment):
            raise DomainError("second-moment constraint must be finite")
        if self.mean is not None and self.second_moment is not None:
            if self.second_moment - self.mean**2 <= 0:
                raise InfeasibleError(
                    f"infeasible constraints: second moment {self.second_moment} minus "
                    f"squared mean {self.mean**2} must be positive"
                )


@dataclass(frozen=True, eq=False)
class MultiplierSolution:
    """Solved multipliers for rho0(x) = (1/beta) exp(1 - l1 - l2 x - l3 x^2)."""

    lambda1: float
    lambda2: float | None
    lambda3: float | None
    constraint_residuals: np.ndarray
    quadrature_error_estimate: float
    iterations: int
    beta: WeightFunction

    def density(self, x):
        """Evaluate rho0 at x (scalar or array); zero outside the support."""
        return _eval_density(self.beta, self.lambda1, self.lambda2, self.lambda3, x)

    def density_table(self, points: int = 512) -> np.ndarray:
        """(points, 2) array of (x, rho0(x)) samples for plotting.

        Log-spaced offsets from the finite edge on semi-infinite supports,
        linear spacing otherwise.  Unbounded directions are cut where the
        density has decayed to ~1e-13 of its peak.
        """
        return _density_table(self, points)


def _eval_density(beta: WeightFunction, lambda1: float, lam2, lam3, x):
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    a, b = beta.support
    inside = (arr >= a) & (arr <= b)
    out = np.zeros_like(arr)
    if inside.any():
        xi = arr[inside]
        expo = 1.0 - lambda1
        if lam2 is not None:
            expo = expo - lam2 * xi
        if lam3 is not None:
            expo = expo - lam3 * xi * xi
        with np.errstate(under="ignore"):
            out[inside] = np.exp(expo) / beta(xi)
    return float(out[0]) if scalar else out


def tabulated_density(xs, values):
    """Linear-interpolation callable for a density known on a grid."""
    xs = np.asarray(xs, dtype=float)
    values = np.asarray(values, dtype=float)
    if xs.ndim != 1 or xs.size < 2 or xs.shape != values.shape:
        raise DomainError("tabulated density needs matching 1-D grids with >= 2 points")
    if np.any(np.diff(xs) <= 0):
        raise DomainError("tabulated density grid must be strictly increasing")

    def rho(x):
        return np.interp(x, xs, values, left=0.0, right=0.0)

    return rho


# ---------------------------------------------------------------------------
# moment integrals of the unnormalized family
# ---------------------------------------------------------------------------

def _exponent_peak(lam2: float, lam3: float, a: float, b: float) -> float:
    """max over [a,b] of -lam2*x - lam3*x^2 (+inf when unbounded above)."""

    def g(x):
        return -lam2 * x - lam3 * x * x

    candidates = []
    for end in (a, b):
        if np.isfinite(end):
            candidates.append(g(end))
        else:
            # limit along the infinite direction
            if lam3 > 0:
                candidates.append(-np.inf)
            elif lam3 < 0:
                candidates.append(np.inf)
            else:
                sign = 1.0 if end == np.inf else -1.0
                if -lam2 * sign > 0:
                    candidates.append(np.inf)
                elif lam2 == 0.0:
                    candidates.append(0.0)
                else:
                    candidates.append(-np.inf)
    if lam3 != 0.0:
        vertex = -lam2 / (2.0 * lam3)
        if a <= vertex <= b and lam3 > 0:
            candidates.append(g(vertex))
    return max(candidates)


class _MomentEvaluator:
    """Moments int x^k (1/beta) exp(-lam2 x - lam3 x^2) dx, overflow-shifted.

    Returns shifted values Z' = exp(-shift) Z; moment ratios E[x^k] are
    shift-invariant and lambda1 recovers the shift analytically.
    """

    def __init__(self, beta: WeightFunction, tol: float = DEFAULT_TOL):
        self.beta = beta
        self.tol = tol

    def __call__(self, lam2: float, lam3: float, max_order: int):
        a, b = self.beta.support
        shift = _exponent_peak(lam2, lam3, a, b)
        if not np.isfinite(shift):
            return None  # exponent unbounded above: certainly divergent
        values = np.empty(max_order + 1)
        max_err = 0.0
        for k in range(max_order + 1):

            def f(x, k=k):
                expo = -lam2 * x - lam3 * x * x - shift
                w = np.exp(expo) / self.beta(x)
                return w if k == 0 else x**k * w

            value, err = integrate(f, a, b, self.tol)
            if not np.isfinite(value) or err > DIVERGENCE_RTOL * max(1.0, abs(value)):
                return None
            values[k] = value
            max_err = max(max_err, err)
        if values[0] <= 0:
            return None
        return values, shift, max_err


# ---------------------------------------------------------------------------
# solvers
# ---------------------------------------------------------------------------

def _finalize(beta: WeightFunction, lam2, lam3, log_z: float, iterations: int,
              constraints: ConstraintSet) -> MultiplierSolution:
    """Recover lambda1 from normalization and re-verify every constraint."""
    lambda1 = 1.0 + log_z

    def rho(x):
        return _eval_density(beta, lambda1, lam2, lam3, x)

    a, b = beta.support
    residuals = []
    max_err = 0.0
    mass, err = integrate(rho, a, b, DEFAULT_TOL)
    residuals.append(mass - 1.0)
    max_err = max(max_err, err)
    if constraints.mean is not None:
        mean, err = integrate(lambda x: x * rho(x), a, b, DEFAULT_TOL)
        residuals.append(mean - constraints.mean)
        max_err = max(max_err, err)
    if constraints.second_moment is not None:
        m2, err = integrate(lambda x: x * x * rho(x), a, b, DEFAULT_TOL)
        residuals.append(m2 - constraints.second_moment)
        max_err = max(max_err, err)
    residuals = np.asarray(residuals)
    if np.any(np.abs(residuals) > 1e-8):
        raise InfeasibleError(
            f"solution failed verification: constraint residuals {residuals.tolist()}"
        )
    return MultiplierSolution(
        lambda1=lambda1,
        lambda2=lam2,
        lambda3=lam3,
        constraint_residuals=residuals,
        quadrature_error_estimate=max_err,
        iterations=iterations,
        beta=beta,
    )


def solve_unconstrained(beta: WeightFunction) -> MultiplierSolution:
    """Maximizer C/beta with C = 1 / int(1/beta); needs that integral finite."""
    a, b = beta.support
    z, err = integrate(lambda x: 1.0 / beta(x), a, b, DEFAULT_TOL)
    if not np.isfinite(z) or z <= 0 or err > DIVERGENCE_RTOL * max(1.0, abs(z)):
        raise InfeasibleError(
            f"normalization integral int 1/beta over ({a}, {b}) does not converge "
            f"(value {z!r}, error estimate {err!r})"
        )
    return _finalize(beta, None, None, math.log(z), 0, ConstraintSet())


def _feasible_start(moments: _MomentEvaluator, guesses, lam3: float, max_order: int):
    """First multiplier value (guesses, then geometric sign scan) that converges."""
    probes = list(guesses)
    for j in range(-4, 44):
        step = 2.0**j
        probes.extend([step, -step])
    for lam2 in probes:
        result = moments(lam2, lam3, max_order)
        if result is not None:
            return lam2, result
    raise InfeasibleError(
        "normalization integral diverges for every multiplier sign pattern tried"
    )


def _solve_mean_multiplier(beta: WeightFunction, mu: float, lam3: float = 0.0):
    """Find lam2 with E[x] = mu at fixed lam3; returns (lam2, moments, iterations).

    Damped Newton on r(lam2) = E[x] - mu (strictly decreasing since
    r' = -Var(x)); on stall, bisection on a bracket found by geometric
    scanning around the best iterate.
    """
    a, b = beta.support
    moments = _MomentEvaluator(beta)
    scale = max(1.0, abs(mu))

    guesses = []
    if np.isfinite(a) and b == np.inf:
        guesses.append(1.0 / (mu - a) if mu > a else 1.0)
    elif a == -np.inf and np.isfinite(b):
        guesses.append(-1.0 / (b - mu) if mu < b else -1.0)
    else:
        guesses.append(0.0)

    lam2, result = _feasible_start(moments, guesses, lam3, 2)
    iterations = 0

    def residual(res):
        values = res[0]
        return values[1] / values[0] - mu

    r = residual(result)
    while abs(r) > RESIDUAL_RTOL * scale and iterations < MAX_NEWTON_ITER:
        iterations += 1
        values = result[0]
        e1 = values[1] / values[0]
        var = values[2] / values[0] - e1 * e1
        if not np.isfinite(var) or var <= 0:
            break
        step = r / var  # Newton: lam2 <- lam2 + r/Var
        damp = 1.0
        accepted = False
        while damp >= 2.0**-30:
            cand = lam2 + damp * step
            cand_result = moments(cand, lam3, 2)
            if cand_result is not None:
                r_cand = residual(cand_result)
                if abs(r_cand) < abs(r) * (1.0 - 1e-4 * damp) or abs(r_cand) <= RESIDUAL_RTOL * scale:
                    lam2, result, r = cand, cand_result, r_cand
                    accepted = True
                    break
            damp *= 0.5
        if not accepted:
            break

    if abs(r) > RESIDUAL_RTOL * scale:
        lam2, result, r, extra = _bisect_mean(moments, lam2, result, r, mu, lam3, scale)
        iterations += extra
    if abs(r) > RESIDUAL_RTOL * scale:
        raise InfeasibleError(
            f"mean constraint {mu} unreachable on support ({a}, {b}): "
            f"best residual {r!r} at lam2={lam2!r}"
        )
    return lam2, result, iterations


def _bisect_mean(moments, lam2, result, r, mu, lam3, scale):
    """Geometric scan for a sign change of E[x] - mu, then plain bisection."""
    span = max(1.0, abs(lam2))
    points = [(lam2, result, r)]
    for j in range(-6, 44):
        for sign in (1.0, -1.0):
            cand = lam2 + sign * span * 2.0**j
            cand_result = moments(cand, lam3, 2)
            if cand_result is None:
                continue
            values = cand_result[0]
            points.append((cand, cand_result, values[1] / values[0] - mu))
        if any(p[2] > 0 for p in points) and any(p[2] < 0 for p in points):
            break
    lows = [p for p in points if p[2] > 0]   # r decreasing: these sit at lower lam2
    highs = [p for p in points if p[2] < 0]
    extra = 0
    if not lows or not highs:
        best = min(points, key=lambda p: abs(p[2]))
        return best[0], best[1], best[2], extra
    lo_point = max(lows, key=lambda p: p[0])
    hi_point = min(highs, key=lambda p: p[0])
    best = lo_point if abs(lo_point[2]) < abs(hi_point[2]) else hi_point
    lo, hi = lo_point[0], hi_point[0]
    while extra < MAX_BISECT_ITER:
        extra += 1
        mid = 0.5 * (lo + hi)
        mid_result = moments(mid, lam3, 2)
        if mid_result is None:
            break  # should not happen: feasible set is an interval
        values = mid_result[0]
        r_mid = values[1] / values[0] - mu
        if abs(r_mid) < abs(best[2]):
            best = (mid, mid_result, r_mid)
        if abs(r_mid) <= RESIDUAL_RTOL * scale:
            break
        if r_mid > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16 * max(1.0, abs(lo), abs(hi)):
            break
    return best[0], best[1], best[2], extra


def solve_with_mean(beta: WeightFunction, mu: float) -> MultiplierSolution:
    """Multipliers for the normalization + mean problem (lambda3 absent)."""
    lam2, result, iterations = _solve_mean_multiplier(beta, mu)
    values, shift, _ = result
    log_z = shift + math.log(values[0])
    return _finalize(beta, lam2, None, log_z, iterations, ConstraintSet(mean=mu))


def solve_with_mean_and_second_moment(beta: WeightFunction, mu: float,
                                      sigma2: float) -> MultiplierSolution:
    """Multipliers for normalization + mean + raw second moment.

    Damped Newton on the 2-vector residual (E[x]-mu, E[x^2]-sigma2); the
    Jacobian is minus the covariance matrix of (x, x^2) under the current
    density.  On stall, falls back to alternating coordinate solves: the
    mean equation is re-solved for lam2 at each trial lam3 and the
    second-moment residual is bisected over lam3.
    """
    constraints = ConstraintSet(mean=mu, second_moment=sigma2)
    a, b = beta.support
    moments = _MomentEvaluator(beta)
    variance = sigma2 - mu * mu
    lam3 = 1.0 / (2.0 * variance)
    lam2 = -2.0 * lam3 * mu
    scale = np.array([max(1.0, abs(mu)), max(1.0, abs(sigma2))])

    state = moments(lam2, lam3, 4)
    if state is None:
        found = False
        for j in range(0, 40):
            for lam3_try in (lam3 * 2.0**j, lam3 * 2.0**-j):
                if lam3_try <= 0:
                    continue
                try:
                    lam2_try, res1d, _ = _solve_mean_multiplier(beta, mu, lam3_try)
                except InfeasibleError:
                    continue
                state = moments(lam2_try, lam3_try, 4)
                if state is not None:
                    lam2, lam3 = lam2_try, lam3_try
                    found = True
                    break
            if found:
                break
        if state is None:
            raise InfeasibleError(
                "normalization integral diverges for every multiplier sign pattern tried"
            )

    def residual(res):
        values = res[0]
        e = values / values[0]
        return np.array([e[1] - mu, e[2] - sigma2])

    r = residual(state)
    iterations = 0
    stalled = False
    while np.max(np.abs(r) / scale) > RESIDUAL_RTOL and iterations < MAX_NEWTON_ITER:
        iterations += 1
        values = state[0]
        e = values / values[0]
        cov = np.array([
            [e[2] - e[1] ** 2, e[3] - e[1] * e[2]],
            [e[3] - e[1] * e[2], e[4] - e[2] ** 2],
        ])
        try:
            step = np.linalg.solve(cov, r)  # Newton: lam <- lam + cov^-1 r
        except np.linalg.LinAlgError:
            stalled = True
            break
        damp = 1.0
        accepted = False
        norm_r = np.max(np.abs(r) / scale)
        while damp >= 2.0**-30:
            cand2 = lam2 + damp * step[0]
            cand3 = lam3 + damp * step[1]
            cand_state = moments(cand2, cand3, 4)
            if cand_state is not None:
                r_cand = residual(cand_state)
                norm_cand = np.max(np.abs(r_cand) / scale)
                if norm_cand < norm_r * (1.0 - 1e-4 * damp) or norm_cand <= RESIDUAL_RTOL:
                    lam2, lam3, state, r = cand2, cand3, cand_state, r_cand
                    accepted = True
                    break
            damp *= 0.5
        if not accepted:
            stalled = True
            break

    if np.max(np.abs(r) / scale) > RESIDUAL_RTOL:
        lam2, lam3, state, r, extra = _coordinate_fallback(
            beta, moments, mu, sigma2, lam3, scale
        )
        iterations += extra
    if np.max(np.abs(r) / scale) > RESIDUAL_RTOL:
        raise InfeasibleError(
            f"constraints mean={mu}, second_moment={sigma2} unreachable on "
            f"support ({a}, {b}): residuals {r.tolist()}"
        )
    values, shift, _ = state
    log_z = shift + math.log(values[0])
    return _finalize(beta, lam2, lam3, log_z, iterations, constraints)


def _coordinate_fallback(beta, moments, mu, sigma2, lam3_start, scale):
    """Bisection over lam3 with lam2 re-solved to match the mean each trial."""

    def second_moment_residual(lam3):
        lam2, result, _ = _solve_mean_multiplier(beta, mu, lam3)
        state = moments(lam2, lam3, 4)
        if state is None:
            raise InfeasibleError("moment integrals diverged during fallback")
        values = state[0]
        return values[2] / values[0] - sigma2, lam2, state

    points = []
    extra = 0
    base = abs(lam3_start) if lam3_start > 0 else 1.0
    for j in range(-20, 21):
        lam3 = base * 2.0**j
        try:
            g, lam2, state = second_moment_residual(lam3)
        except InfeasibleError:
            continue
        extra += 1
        points.append((lam3, g, lam2, state))
        if any(p[1] > 0 for p in points) and any(p[1] < 0 for p in points):
            break
    pos = [p for p in points if p[1] > 0]
    neg = [p for p in points if p[1] < 0]
    if not points:
        raise InfeasibleError("no feasible lam3 found during fallback scan")
    best = min(points, key=lambda p: abs(p[1]))
    if pos and neg:
        # E[x^2] decreases as lam3 grows: positive residual side sits at lower lam3
        lo = max((p[0] for p in pos))
        hi = min((p[0] for p in neg))
        lo, hi = min(lo, hi), max(lo, hi)
        while extra < MAX_BISECT_ITER:
            extra += 1
            mid = 0.5 * (lo + hi)
            try:
                g, lam2, state = second_moment_residual(mid)
            except InfeasibleError:
                break
            if abs(g) < abs(best[1]):
                best = (mid, g, lam2, state)
            if abs(g) <= RESIDUAL_RTOL * scale[1]:
                break
            if g > 0:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-16 * max(1.0, abs(lo), abs(hi)):
                break
    lam3, g, lam2, state = best
    values = state[0]
    e = values / values[0]
    r = np.array([e[1] - mu, e[2] - sigma2])
    return lam2, lam3, state, r, extra


def solve(beta: WeightFunction, constraints: ConstraintSet) -> MultiplierSolution:
    """Dispatch on which constraints are present."""
    if constraints.mean is None and constraints.second_moment is None:
        return solve_unconstrained(beta)
    if constraints.second_moment is None:
        return solve_with_mean(beta, constraints.mean)
    if constraints.mean is None:
        raise DomainError("a second-moment constraint requires a mean constraint")
    return solve_with_mean_and_second_moment(beta, constraints.mean,
                                             constraints.second_moment)


def power_law_density(alpha: float, k: float) -> MultiplierSolution:
    """The maximizer (alpha-1) k^(alpha-1) x^(-alpha) on [k, inf).

    Realized through the unconstrained solver with beta(x) = x^alpha; the
    tail integral int_k^inf x^(-alpha) dx only converges for alpha > 1.
    """
    if not np.isfinite(k) or k <= 0:
        raise DomainError(f"power law needs k > 0, got {k!r}")
    if not np.isfinite(alpha) or alpha <= 1.0:
        raise InfeasibleError(
            f"power law tail x^(-alpha) is not integrable on [k, inf) for alpha={alpha!r}"
        )
    return solve_unconstrained(WeightFunction.power(alpha, (k, np.inf)))


def continuous_entropy(rho, beta: WeightFunction, mass_tol: float = 1e-6) -> float:
    """-int rho ln(beta rho) dx over beta's support.

    rho is a vectorized callable (see :func:`tabulated_density` for grids).
    Points where rho vanishes contribute zero.  The density must carry unit
    mass within mass_tol.
    """
    a, b = beta.support
    mass, _ = integrate(rho, a, b, DEFAULT_TOL)
    if not np.isfinite(mass) or abs(mass - 1.0) > mass_tol:
        raise DomainError(f"density integrates to {mass!r}, not 1 within {mass_tol}")

    def integrand(x):
        r = np.asarray(rho(x), dtype=float)
        out = np.zeros_like(r)
        pos = r > 0
        if pos.any():
            xp = np.asarray(x, dtype=float)[pos]
            out[pos] = -r[pos] * np.log(beta(xp) * r[pos])
        return out

    value, _ = integrate(integrand, a, b, DEFAULT_TOL)
    return float(value)


# ---------------------------------------------------------------------------
# density tables
# ---------------------------------------------------------------------------

def _decay_cut(density, start: float, direction: float, scale: float) -> float:
    """Distance from start (along direction) where the density has decayed."""
    offsets = scale * 2.0 ** np.arange(-20, 81, dtype=float)
    xs = start + direction * offsets
    vals = density(xs)
    peak = float(np.max(vals))
    if peak <= 0.0:
        return float(offsets[-1])
    past_peak = np.arange(vals.size) >= int(np.argmax(vals))
    low = past_peak & (vals <= 1e-13 * peak)
    idx = int(np.argmax(low)) if low.any() else vals.size - 1
    return float(offsets[idx])


def _density_table(solution: MultiplierSolution, points: int) -> np.ndarray:
    if points < 2:
        raise DomainError("a density table needs at least 2 points")
    a, b = solution.beta.support
    if np.isfinite(a) and np.isfinite(b):
        xs = np.linspace(a, b, points)
    elif np.isfinite(a):
        scale = max(1.0, abs(a))
        hi = _decay_cut(solution.density, a, +1.0, scale)
        xs = a + np.geomspace(scale * 1e-6, hi, points)
    elif np.isfinite(b):
        scale = max(1.0, abs(b))
        hi = _decay_cut(solution.density, b, -1.0, scale)
        xs = b - np.geomspace(scale * 1e-6, hi, points)[::-1]
    else:
        left = _decay_cut(solution.density, 0.0, -1.0, 1.0)
        right = _decay_cut(solution.density, 0.0, +1.0, 1.0)
        xs = np.linspace(-left, right, points)
    return np.column_stack([xs, solution.density(xs)])
