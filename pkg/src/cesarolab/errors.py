"""Exception types shared across the package.

ValueError subclasses mark bad inputs (wrong dimension, points outside
the domain, inconsistent parameters); ArithmeticError subclasses mark
numerical failures (non-finite integrand values, quadrature that did
not reach the requested accuracy).  The CLI maps the former to exit
code 1 and the latter to exit code 2.
"""

from __future__ import annotations


class DimensionMismatch(ValueError):
    """Operands or points whose dimensions disagree."""


class DomainError(ValueError):
    """A point or parameter outside the mathematically valid range."""


class SingularInput(DomainError):
    """Input sitting exactly on a singularity of the requested quantity."""


class InvalidParameter(ValueError):
    """A configuration value violating its contract."""


class EvaluationFailure(ArithmeticError):
    """An integrand returned a non-finite value at a quadrature node."""

    def __init__(self, message: str, node=None):
        super().__init__(message)
        self.node = node


class AccuracyFailure(ArithmeticError):
    """An adaptive rule stopped before reaching the requested accuracy.

    Carries the best available estimate so callers can still report it.
    """

    def __init__(self, message: str, best_estimate=None, error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
