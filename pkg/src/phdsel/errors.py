"""Exception hierarchy shared across the package."""


class PhdselError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(PhdselError, ValueError):
    """Malformed data, vectors, or configuration."""


class InvalidParameter(PhdselError, ValueError):
    """Parameter outside the admissible domain (rate <= 0, h <= 0, ...)."""


class FitFailed(PhdselError, RuntimeError):
    """Optimizer could not locate a finite objective value."""


class BoundaryParameter(PhdselError, ValueError):
    """Derivative requested at a parameter sitting on its box boundary."""


class SingularInformation(PhdselError, RuntimeError):
    """Information matrix numerically singular (condition number > 1e12)."""


class DegenerateGradient(PhdselError, RuntimeError):
    """Distance gradient undefined: model cell probability is zero on an
    occupied cell and the caller did not request flooring."""


class DegenerateVariance(PhdselError, RuntimeError):
    """Variance estimate collapsed to zero; the studentized statistic is
    undefined."""


class NoEquidistance(PhdselError, RuntimeError):
    """No mixing weight equalizes the two model distances."""
