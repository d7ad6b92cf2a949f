"""Weighted (nonsymmetric) entropy toolkit.

Discrete and continuous entropy functionals with per-event auxiliary
weights, closed-form and variational maximum-entropy solvers, independent
brute-force oracles, and Zipf/Mandelbrot rank-frequency fitting.
"""

from .entropy import (
    DiscreteDistribution,
    WeightFamily,
    WeightVector,
    auxiliary_information,
    nonsymmetric_entropy,
    shannon_entropy,
    total_information,
    zipf_entropy,
)
from .discrete import (
    DiscreteMaxEntSolution,
    HessianReport,
    entropy_monotonicity_scan,
    hessian_check,
    hessian_log_determinant_closed_form,
    hessian_matrix,
    solve_discrete_maxent,
    solve_zipf_maxent,
    stationarity_residual,
)
from .continuous import (
    ConstraintSet,
    MultiplierSolution,
    WeightFunction,
    continuous_entropy,
    power_law_density,
    solve,
    solve_unconstrained,
    solve_with_mean,
    solve_with_mean_and_second_moment,
    tabulated_density,
)
from .oracle import (
    OracleReport,
    Theorem4Report,
    constraint_preserving_perturbations,
    gradient_check,
    grid_search_maxent,
    projected_gradient_maxent,
    sample_simplex,
    theorem4_check_continuous,
    theorem4_check_discrete,
)
from .corpus import (
    FitResult,
    RankFrequencyTable,
    fit_mandelbrot,
    fit_zipf,
    rank_frequency,
    tokenize,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    FitError,
    InfeasibleError,
    InputError,
    NsentropyError,
)

__version__ = "0.1.0"

__all__ = [
    "DiscreteDistribution",
    "WeightVector",
    "WeightFamily",
    "auxiliary_information",
    "total_information",
    "nonsymmetric_entropy",
    "shannon_entropy",
    "zipf_entropy",
    "DiscreteMaxEntSolution",
    "HessianReport",
    "solve_discrete_maxent",
    "solve_zipf_maxent",
    "stationarity_residual",
    "hessian_matrix",
    "hessian_check",
    "hessian_log_determinant_closed_form",
    "entropy_monotonicity_scan",
    "WeightFunction",
    "ConstraintSet",
    "MultiplierSolution",
    "solve",
    "solve_unconstrained",
    "solve_with_mean",
    "solve_with_mean_and_second_moment",
    "power_law_density",
    "continuous_entropy",
    "tabulated_density",
    "OracleReport",
    "Theorem4Report",
    "grid_search_maxent",
    "projected_gradient_maxent",
    "sample_simplex",
    "theorem4_check_discrete",
    "theorem4_check_continuous",
    "constraint_preserving_perturbations",
    "gradient_check",
    "FitResult",
    "RankFrequencyTable",
    "tokenize",
    "rank_frequency",
    "fit_zipf",
    "fit_mandelbrot",
    "NsentropyError",
    "DomainError",
    "DimensionError",
    "InputError",
    "InfeasibleError",
    "ConvergenceError",
    "FitError",
    "__version__",
]
