"""Log-gamma and the Euler Beta function, plus a quadrature cross-check."""

from __future__ import annotations

import math

from .errors import DomainError, ParameterError
from .quadrature import QuadratureResult, integrate

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_2n / (2n (2n-1)) for the Stirling tail of ln Gamma.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)
_STIRLING_MIN = 10.0

_EULER_GAMMA = 0.57721566490153286061

# (zeta(k) - 1) / k for k = 2..30: Taylor coefficients of ln Gamma(2 + z),
# alternating in sign.  Used near the roots x = 1, 2 where lgamma loses
# relative accuracy.
_LGAMMA2_SERIES = (
    0.3224670334241132,
    0.0673523010531981,
    0.020580808427784546,
    0.007385551028673986,
    0.0028905103307415234,
    0.001192753911703261,
    0.0005096695247430425,
    0.00022315475845357939,
    9.945751278180853e-05,
    4.492623673813314e-05,
    2.050721277567069e-05,
    9.439488275268397e-06,
    4.374866789907488e-06,
    2.039215753801366e-06,
    9.55141213040742e-07,
    4.492469198764566e-07,
    2.1207184805554665e-07,
    1.0043224823968099e-07,
    4.7698101693639804e-08,
    2.2711094608943164e-08,
    1.0838659214896955e-08,
    5.183475041970047e-09,
    2.4836745438024785e-09,
    1.1921401405860912e-09,
    5.731367241678862e-10,
    2.7595228851242334e-10,
    1.330476437424449e-10,
    6.4229645638381e-11,
    3.1044247747322276e-11,
)


def _log_gamma_two_plus(z: float) -> float:
    # ln Gamma(2 + z) for |z| <= 1/2
    acc = 0.0
    for c in reversed(_LGAMMA2_SERIES):
        acc = -acc * z + c
    return z * ((1.0 - _EULER_GAMMA) + z * acc)


def log_gamma(x: float) -> float:
    """``ln Gamma(x)`` for ``x > 0``.

    Away from the roots at 1 and 2 this is the C library ``lgamma`` (which
    handles small arguments by reflection).  On ``[0.5, 2.5]`` a power
    series around 2 keeps the error relative rather than absolute.
    """
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x!r}")
    if 1.5 <= x <= 2.5:
        return _log_gamma_two_plus(x - 2.0)
    if 0.5 <= x < 1.5:
        z = x - 1.0
        return _log_gamma_two_plus(z) - math.log1p(z)
    return math.lgamma(x)


def _stirling_tail(x: float) -> float:
    # ln Gamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2], valid for x >= 10
    inv = 1.0 / x
    inv2 = inv * inv
    acc = 0.0
    for c in reversed(_STIRLING):
        acc = acc * inv2 + c
    return acc * inv


def log_beta(x: float, y: float) -> float:
    """``ln B(x, y)`` without the cancellation of three large lgammas."""
    if not (x > 0 and y > 0):
        raise DomainError(f"Beta needs positive arguments, got ({x!r}, {y!r})")
    small, large = (x, y) if x <= y else (y, x)
    total = small + large
    if small >= _STIRLING_MIN:
        corr = _stirling_tail(small) + _stirling_tail(large) - _stirling_tail(total)
        return (-0.5 * math.log(large) + _HALF_LOG_2PI + corr
                + (small - 0.5) * math.log(small / total)
                + large * math.log1p(-small / total))
    if large >= _STIRLING_MIN:
        corr = _stirling_tail(large) - _stirling_tail(total)
        return (log_gamma(small) + corr + small - small * math.log(total)
                + (large - 0.5) * math.log1p(-small / total))
    return log_gamma(small) + log_gamma(large) - log_gamma(total)


_GAMMA_DIRECT_MAX = 170.0


def beta(x: float, y: float) -> float:
    """Euler Beta function ``B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y)``.

    While all three Gammas stay finite the direct ratio is used: it is
    correctly rounded at small integers, where the log route loses a few ulp.
    """
    if x > 0 and y > 0 and x + y < _GAMMA_DIRECT_MAX:
        return math.gamma(x) * math.gamma(y) / math.gamma(x + y)
    return math.exp(log_beta(x, y))


def beta_by_quadrature(x: float, y: float, tol: float = 1e-10) -> QuadratureResult:
    """``int_0^1 t^(x-1) (1-t)^(y-1) dt`` by adaptive quadrature.

    Restricted to ``x, y >= 1`` so the integrand stays bounded.  The
    integrand is passed as is, not as a weight, so this stays an independent
    oracle for :func:`beta` rather than a rewrite of the moment formulas.
    """
    if not (x >= 1 and y >= 1):
        raise ParameterError(f"beta_by_quadrature needs x, y >= 1, got ({x!r}, {y!r})")
    px, py = x - 1.0, y - 1.0

    def integrand(t):
        return t ** px * (1.0 - t) ** py

    return integrate(integrand, 0.0, 1.0, tol)
