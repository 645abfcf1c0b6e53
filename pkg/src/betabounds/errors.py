"""Exception types raised across the package."""


class BetaBoundsError(Exception):
    """Base class for all package errors."""


class DomainError(BetaBoundsError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParameterError(BetaBoundsError, ValueError):
    """A theorem or class parameter violates its hypothesis."""


class EvaluationPointError(DomainError):
    """A bound needs f at a point (typically a/m or b/m) outside the function's domain."""

    def __init__(self, point, domain):
        super().__init__(f"evaluation point {point!r} outside domain {domain!r}")
        self.point = point
        self.domain = domain


class ToleranceNotMetError(BetaBoundsError, ArithmeticError):
    """Adaptive quadrature could not certify the requested tolerance.

    Carries the best value reached and its error estimate so callers can
    still report something useful.
    """

    def __init__(self, value, err_estimate, evaluations, tol):
        super().__init__(
            f"tolerance {tol:g} not met: estimate {err_estimate:.3g} "
            f"after {evaluations} evaluations"
        )
        self.value = value
        self.err_estimate = err_estimate
        self.evaluations = evaluations
        self.tol = tol


class MonotonicityError(BetaBoundsError, ValueError):
    """A sampled scan found f not monotone in the requested direction."""

    def __init__(self, direction, witness):
        x1, x2 = witness
        super().__init__(f"not {direction}: f({x1!r}) vs f({x2!r}) breaks the order")
        self.direction = direction
        self.witness = witness


class HypothesisError(BetaBoundsError, ValueError):
    """The inputs fall outside what a bound's derivation actually covers."""
