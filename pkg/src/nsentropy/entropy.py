"""Weighted (nonsymmetric) entropy for discrete distributions.

The central quantity is

    S(p, beta) = -sum_i p(i) * ln(beta_i * p(i)),

a Shannon entropy in which every event carries a positive auxiliary weight
beta_i; the term -ln(beta_i) is the auxiliary information of event i and
-ln(beta_i * p(i)) its total information.  With all weights equal to 1 the
functional reduces to the ordinary Shannon entropy.  All logarithms are
natural.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, DomainError

__all__ = [
    "DiscreteDistribution",
    "WeightVector",
    "WeightFamily",
    "auxiliary_information",
    "total_information",
    "nonsymmetric_entropy",
    "shannon_entropy",
    "zipf_entropy",
]

#: construction tolerance on |sum(p) - 1|
NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """Probability vector on m >= 1 events.

    Entries must be non-negative and sum to 1 within 1e-9; inputs inside
    that tolerance are renormalized exactly (divided by their sum) so that
    downstream identities hold tightly.
    """

    probs: np.ndarray

    def __init__(self, probs):
        arr = np.array(probs, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise DomainError("a distribution needs at least one event")
        if not np.all(np.isfinite(arr)):
            raise DomainError("probabilities must be finite")
        if np.any(arr < 0):
            raise DomainError(f"negative probability at index {int(np.argmin(arr)) + 1}")
        total = float(arr.sum())
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise DomainError(
                f"probabilities sum to {total!r}, outside 1 +/- {NORMALIZATION_TOL}"
            )
        arr = arr / total
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    def __len__(self) -> int:
        return self.probs.size

    @property
    def m(self) -> int:
        return self.probs.size


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Strictly positive auxiliary weights beta_i, length m >= 1."""

    weights: np.ndarray

    def __init__(self, weights):
        arr = np.array(weights, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise DomainError("a weight vector needs at least one entry")
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
            raise DomainError("weights must be finite and strictly positive")
        arr.setflags(write=False)
        object.__setattr__(self, "weights", arr)

    def __len__(self) -> int:
        return self.weights.size

    @property
    def m(self) -> int:
        return self.weights.size


@dataclass(frozen=True)
class WeightFamily:
    """Generator of weight vectors beta_1..beta_m from a small parametric family.

    kind "const":      beta_i = c          (c > 0)
    kind "power":      beta_i = i**alpha   (any real alpha; Zipf weights)
    kind "mandelbrot": beta_i = (i+gamma)**alpha  (gamma > -1; shifted power)
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind == "const":
            c = self.params.get("c")
            if c is None or not np.isfinite(c) or c <= 0:
                raise DomainError("const family needs c > 0")
        elif self.kind == "power":
            alpha = self.params.get("alpha")
            if alpha is None or not np.isfinite(alpha):
                raise DomainError("power family needs a finite alpha")
        elif self.kind == "mandelbrot":
            alpha = self.params.get("alpha")
            gamma = self.params.get("gamma")
            if alpha is None or not np.isfinite(alpha):
                raise DomainError("mandelbrot family needs a finite alpha")
            if gamma is None or not np.isfinite(gamma) or gamma <= -1:
                raise DomainError("mandelbrot family needs gamma > -1")
        else:
            raise DomainError(f"unknown weight family kind {self.kind!r}")

    @classmethod
    def constant(cls, c: float) -> "WeightFamily":
        return cls("const", {"c": float(c)})

    @classmethod
    def power(cls, alpha: float) -> "WeightFamily":
        return cls("power", {"alpha": float(alpha)})

    @classmethod
    def mandelbrot(cls, alpha: float, gamma: float) -> "WeightFamily":
        return cls("mandelbrot", {"alpha": float(alpha), "gamma": float(gamma)})

    # shifted-power is the family's generic name; mandelbrot the rank-frequency one
    shifted_power = mandelbrot

    def materialize(self, m: int) -> WeightVector:
        """Weights for events 1..m as a WeightVector."""
        if m < 1:
            raise DomainError("m must be >= 1")
        i = np.arange(1, m + 1, dtype=float)
        if self.kind == "const":
            values = np.full(m, self.params["c"])
        elif self.kind == "power":
            values = i ** self.params["alpha"]
        else:
            values = (i + self.params["gamma"]) ** self.params["alpha"]
        return WeightVector(values)


def _check_scalar_weight(beta_i: float) -> float:
    beta_i = float(beta_i)
    if not np.isfinite(beta_i) or beta_i <= 0:
        raise DomainError(f"weight must be finite and positive, got {beta_i!r}")
    return beta_i


def auxiliary_information(beta_i: float) -> float:
    """-ln(beta_i), the information carried by the weight alone."""
    return -np.log(_check_scalar_weight(beta_i))


def total_information(p_i: float, beta_i: float) -> float:
    """-ln(beta_i * p_i): self-information of p_i plus auxiliary information."""
    beta_i = _check_scalar_weight(beta_i)
    p_i = float(p_i)
    if not np.isfinite(p_i) or p_i <= 0 or p_i > 1:
        raise DomainError(f"probability must lie in (0, 1], got {p_i!r}")
    return -np.log(beta_i * p_i)


def _entropy_terms(p: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Per-event contributions -p*ln(beta*p) with the 0*ln(0) = 0 convention."""
    out = np.zeros_like(p)
    pos = p > 0
    out[pos] = -p[pos] * np.log(beta[pos] * p[pos])
    return out


def nonsymmetric_entropy(dist: DiscreteDistribution, weights: WeightVector) -> float:
    """S(p, beta) = -sum_i p(i) ln(beta_i p(i)); zero-probability terms contribute 0."""
    if dist.m != weights.m:
        raise DimensionError(
            f"distribution has {dist.m} events but weight vector has {weights.m}"
        )
    return float(_entropy_terms(dist.probs, weights.weights).sum())


def shannon_entropy(dist: DiscreteDistribution) -> float:
    """-sum_i p(i) ln p(i) with 0*ln(0) = 0."""
    p = dist.probs
    return float(_entropy_terms(p, np.ones_like(p)).sum())


def zipf_entropy(dist: DiscreteDistribution, alpha: float) -> float:
    """Nonsymmetric entropy under the rank-power weights beta_i = i**alpha."""
    return nonsymmetric_entropy(dist, WeightFamily.power(alpha).materialize(dist.m))
