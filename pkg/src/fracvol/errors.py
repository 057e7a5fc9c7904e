"""Exception hierarchy shared by all fracvol modules."""


class FracVolError(Exception):
    """Base class for every error raised by fracvol."""


class DomainError(FracVolError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigurationError(FracVolError, ValueError):
    """Inconsistent or invalid run configuration."""


class GenerationError(FracVolError, RuntimeError):
    """A random-path generator could not produce a sample."""


class FactorizationError(GenerationError):
    """Covariance matrix is not numerically positive definite."""

    def __init__(self, message, smallest_pivot=None):
        super().__init__(message)
        self.smallest_pivot = smallest_pivot


class NumericalError(FracVolError, ArithmeticError):
    """Non-finite or otherwise unusable numbers during a computation."""


class FitError(NumericalError):
    """A regression could not be performed on the supplied points."""


class DataError(FracVolError, ValueError):
    """Malformed input data. ``rows`` lists offending 1-based data rows."""

    def __init__(self, message, rows=()):
        super().__init__(message)
        self.rows = tuple(rows)


class BesselEvaluationError(NumericalError):
    """Bessel series outside its validated envelope or not converged."""


class UnsupportedOrderError(BesselEvaluationError):
    """Integer orders are not supported by the J/J_{-nu} Neumann construction."""
