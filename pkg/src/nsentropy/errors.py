"""Exception types shared across the library.

Every error raised by nsentropy derives from :class:`NsentropyError`, so
callers (notably the CLI) can distinguish domain/infeasibility failures
(exit code 1) from genuine usage errors (exit code 2).
"""


class NsentropyError(Exception):
    """Base class for all nsentropy errors."""


class DomainError(NsentropyError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DimensionError(NsentropyError, ValueError):
    """Vector lengths that must agree do not."""


class InputError(NsentropyError, ValueError):
    """Malformed external input (files, expressions, byte streams)."""


class InfeasibleError(NsentropyError, RuntimeError):
    """The requested constrained problem has no solution (or none was found)."""


class ConvergenceError(NsentropyError, RuntimeError):
    """An iterative method hit its iteration cap before reaching tolerance."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class FitError(NsentropyError, ValueError):
    """Not enough (or degenerate) data to fit a model."""
