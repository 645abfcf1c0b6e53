"""Adaptive quadrature for Jacobi-type weighted integrals.

Everything goes through QUADPACK (``scipy.integrate.quad``) with a pure
absolute tolerance.  Weighted integrals hand the weight
``(x-a)^p (b-x)^q`` to the algebraic-weight routine, which integrates the
endpoint behaviour exactly through modified Chebyshev moments, so a
non-integer exponent costs nothing extra and needs no special mesh.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import DomainError, ParameterError, ToleranceNotMetError
from .function_model import FunctionSpec

DEFAULT_TOL = 1e-10
MAX_EVALUATIONS = 1_000_000

# a bisection costs at most two 25-point moment rules
_EVALS_PER_SPLIT = 50


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    err_estimate: float
    evaluations: int


@dataclass(frozen=True)
class WeightParams:
    """Interval ``[a, b]`` and exponents of the weight ``(x-a)^p (b-x)^q``."""

    a: float
    b: float
    p: float
    q: float

    def __post_init__(self):
        for name in ("a", "b", "p", "q"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ParameterError(f"{name} must be finite, got {v!r}")
        if not 0.0 <= self.a < self.b:
            raise ParameterError(f"need 0 <= a < b, got a={self.a!r}, b={self.b!r}")
        if self.p <= 0 or self.q <= 0:
            raise ParameterError(f"need p, q > 0, got p={self.p!r}, q={self.q!r}")

    @property
    def scale(self) -> float:
        """``(b-a)^(p+q+1)``, the factor in front of every unit-interval form."""
        return (self.b - self.a) ** (self.p + self.q + 1.0)


def integrate(func, lo, hi, tol=DEFAULT_TOL, weight=None,
              max_evaluations=MAX_EVALUATIONS) -> QuadratureResult:
    """Adaptive integral of ``func`` over ``[lo, hi]`` to absolute ``tol``.

    ``weight=(p, q)`` multiplies the integrand by ``(x-lo)^p (hi-x)^q``,
    handled analytically.  If QUADPACK stops short of ``tol`` (subdivision
    cap, roundoff, bad integrand) :class:`ToleranceNotMetError` carries the
    best value and the reached estimate.
    """
    if not tol > 0:
        raise ParameterError(f"tol must be positive, got {tol!r}")
    if not lo < hi:
        raise DomainError(f"empty interval [{lo!r}, {hi!r}]")
    kwargs = {"epsabs": tol, "epsrel": 0.0, "full_output": 1,
              "limit": max(1, int(max_evaluations) // _EVALS_PER_SPLIT)}
    if weight is not None:
        kwargs.update(weight="alg", wvar=tuple(float(v) for v in weight))

    def scalar(x):
        return float(func(np.float64(x)))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        out = quad(scalar, lo, hi, **kwargs)
    value, err, info = out[0], out[1], out[2]
    if not (math.isfinite(value) and math.isfinite(err)):
        raise DomainError(f"integrand not finite on [{lo!r}, {hi!r}]")
    if len(out) > 3 or err > tol:
        raise ToleranceNotMetError(value, err, info["neval"], tol)
    return QuadratureResult(value, err, info["neval"])


def _check_interval(spec: FunctionSpec, w: WeightParams):
    if not (spec.lo <= w.a and w.b <= spec.hi):
        raise DomainError(f"[{w.a}, {w.b}] not inside domain of {spec.id} {spec.domain}")


def weighted_integral(spec: FunctionSpec, w: WeightParams, tol=DEFAULT_TOL) -> QuadratureResult:
    """``int_a^b (x-a)^p (b-x)^q f(x) dx``."""
    _check_interval(spec, w)
    return integrate(spec.func, w.a, w.b, tol, weight=(w.p, w.q))


def unit_form_integral(spec: FunctionSpec, w: WeightParams, tol=DEFAULT_TOL) -> QuadratureResult:
    """``(b-a)^(p+q+1) int_0^1 (1-t)^p t^q f(ta + (1-t)b) dt``.

    ``tol`` applies to the scaled result, so the inner integral is run at
    ``tol / (b-a)^(p+q+1)``.
    """
    _check_interval(spec, w)
    a, b, p, q = w.a, w.b, w.p, w.q
    f = spec.func
    scale = w.scale

    def integrand(t):
        return f(t * a + (1.0 - t) * b)

    # weight t^q (1-t)^p on [0, 1]
    inner = integrate(integrand, 0.0, 1.0, tol / scale, weight=(q, p))
    return QuadratureResult(scale * inner.value, scale * inner.err_estimate, inner.evaluations)


def lemma_identity_residual(spec: FunctionSpec, w: WeightParams, tol=DEFAULT_TOL) -> float:
    """Gap between the two sides of the change-of-variables identity."""
    lhs = weighted_integral(spec, w, tol)
    rhs = unit_form_integral(spec, w, tol)
    return abs(lhs.value - rhs.value)
