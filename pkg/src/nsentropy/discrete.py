"""Closed-form maximization of the weighted entropy over the simplex.

For positive weights beta_1..beta_m the maximizer of
S(p) = -sum p(i) ln(beta_i p(i)) subject to sum p(i) = 1 is

    p*(i) = (1/beta_i) / sum_j (1/beta_j),      S(p*) = ln sum_j (1/beta_j),

with beta_i p*(i) constant across i.  Rank-power weights beta_i = i**alpha
turn p* into the Zipf shape p*(i) = p*(1) / i**alpha; shifted-power weights
give the Mandelbrot shape.  This module also exposes the stationarity system
and the curvature matrix used to certify that the stationary point is the
global maximum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import DiscreteDistribution, WeightFamily, WeightVector
from .errors import DomainError

__all__ = [
    "DiscreteMaxEntSolution",
    "HessianReport",
    "solve_discrete_maxent",
    "solve_zipf_maxent",
    "stationarity_residual",
    "hessian_matrix",
    "hessian_check",
    "hessian_log_determinant_closed_form",
    "entropy_monotonicity_scan",
]

#: a pivot counts as positive when it exceeds this times the largest diagonal
PIVOT_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class DiscreteMaxEntSolution:
    """Entropy-maximizing distribution for a weight vector, with its value."""

    maximizer: DiscreteDistribution
    max_entropy: float
    weights_used: WeightVector


@dataclass(frozen=True)
class HessianReport:
    """Curvature summary of -d2S/dp(i)dp(j) at an interior point.

    The matrix is (m-1)x(m-1) after eliminating p(m) = 1 - sum of the rest:
    a_ij = delta_ij / p(i) + 1 / p(m).  Positive definiteness of every such
    matrix is what makes the stationary point the global maximum.
    """

    dimension: int
    min_eigen_or_pivot: float
    positive_definite: bool
    determinant: float


def solve_discrete_maxent(weights: WeightVector) -> DiscreteMaxEntSolution:
    """Closed-form maximizer p*(i) = (1/beta_i)/sum(1/beta) and its entropy."""
    inv = 1.0 / weights.weights
    z = inv.sum()
    maximizer = DiscreteDistribution(inv / z)
    return DiscreteMaxEntSolution(
        maximizer=maximizer,
        max_entropy=float(np.log(z)),
        weights_used=weights,
    )


def solve_zipf_maxent(alpha: float, m: int) -> DiscreteMaxEntSolution:
    """Maximizer under beta_i = i**alpha: the truncated Zipf distribution."""
    return solve_discrete_maxent(WeightFamily.power(alpha).materialize(m))


def stationarity_residual(dist: DiscreteDistribution, weights: WeightVector) -> np.ndarray:
    """First-order conditions -ln[beta_i p(i) / (beta_m p(m))], i = 1..m-1.

    All entries vanish exactly at the closed-form maximizer and nowhere else
    on the interior of the simplex.
    """
    if dist.m != weights.m:
        raise DomainError(
            f"distribution has {dist.m} events but weight vector has {weights.m}"
        )
    p = dist.probs
    if np.any(p <= 0):
        raise DomainError("stationarity residual needs all p(i) > 0")
    b = weights.weights
    return -(np.log(b[:-1] * p[:-1]) - np.log(b[-1] * p[-1]))


def hessian_matrix(dist: DiscreteDistribution) -> np.ndarray:
    """The (m-1)x(m-1) matrix a_ij = delta_ij/p(i) + 1/p(m)."""
    p = dist.probs
    if dist.m < 2:
        raise DomainError("curvature matrix needs m >= 2")
    if np.any(p <= 0):
        raise DomainError("curvature matrix needs all p(i) > 0")
    k = dist.m - 1
    return np.diag(1.0 / p[:-1]) + np.full((k, k), 1.0 / p[-1])


def _elimination_pivots(a: np.ndarray) -> np.ndarray:
    """Pivots of symmetric Gaussian elimination (the D of LDL^T), no pivoting."""
    a = a.copy()
    n = a.shape[0]
    pivots = np.empty(n)
    for j in range(n):
        piv = a[j, j]
        pivots[j] = piv
        if piv == 0.0:
            pivots[j + 1 :] = 0.0
            break
        if j + 1 < n:
            col = a[j + 1 :, j]
            a[j + 1 :, j + 1 :] -= np.outer(col, col) / piv
    return pivots


def hessian_check(dist: DiscreteDistribution) -> HessianReport:
    """Factor the curvature matrix and report pivots and determinant.

    Positive definiteness is decided from the elimination pivots (every
    pivot > PIVOT_RTOL times the largest diagonal entry), which is exact for
    this family of matrices and cheaper than an eigendecomposition.
    """
    a = hessian_matrix(dist)
    pivots = _elimination_pivots(a)
    threshold = PIVOT_RTOL * float(a.diagonal().max())
    return HessianReport(
        dimension=a.shape[0],
        min_eigen_or_pivot=float(pivots.min()),
        positive_definite=bool(np.all(pivots > threshold)),
        determinant=float(np.prod(pivots)),
    )


def hessian_log_determinant_closed_form(dist: DiscreteDistribution) -> float:
    """ln det of the curvature matrix from the hatted-product expansion.

    det equals the sum over the index list I = (1, .., m-1, m) of the
    products prod_{j in I, j != i} 1/p(j); evaluated here entirely in log
    space so tiny probabilities cannot overflow.  Serves as an independent
    cross-check of the factorization determinant.
    """
    p = dist.probs
    if dist.m < 2:
        raise DomainError("curvature matrix needs m >= 2")
    if np.any(p <= 0):
        raise DomainError("curvature matrix needs all p(i) > 0")
    log_p = np.log(p)
    # term i: -sum_{j != i} ln p(j) = -sum_j ln p(j) + ln p(i)
    terms = -log_p.sum() + log_p
    peak = terms.max()
    return float(peak + np.log(np.exp(terms - peak).sum()))


def entropy_monotonicity_scan(family: WeightFamily, m_max: int) -> np.ndarray:
    """Maximum entropy ln sum_{i<=m} 1/beta_i for every prefix m = 1..m_max.

    Strictly increasing for any positive weight family, since each prefix
    adds a positive term to the sum.
    """
    if m_max < 1:
        raise DomainError("m_max must be >= 1")
    inv = 1.0 / family.materialize(m_max).weights
    return np.log(np.cumsum(inv))
