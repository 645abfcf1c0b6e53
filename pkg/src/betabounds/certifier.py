"""Grid-sampling checks of the convexity-type defining inequalities.

Each check evaluates the defect (left side minus right side of the defining
inequality) on a tensor grid of ``(x, y, t)`` and reports the worst point.
A grid of density ``n`` has ``n + 1`` equispaced points per axis, endpoints
included, so doubling ``n`` nests the grids and can only add evidence.

A pass is evidence, not proof.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, MonotonicityError, ParameterError
from .function_model import Claim, ClassLabel, ClassParams, FunctionSpec

DEFAULT_DENSITY = 64
MIN_DENSITY = 16
SLACK_TOL = 1e-9


@dataclass(frozen=True)
class Certificate:
    label: ClassLabel
    verdict: str
    grid_density: int
    max_violation: float
    witness: tuple[float, float, float] | None
    params: ClassParams | None = None
    domain: tuple[float, float] = (0.0, 0.0)
    tolerance: float = 0.0
    max_defect: float = 0.0  # signed, even when within tolerance

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_record(self) -> dict:
        rec = {
            "label": self.label.value,
            "verdict": self.verdict,
            "grid_density": self.grid_density,
            "max_violation": self.max_violation,
            "witness": list(self.witness) if self.witness else None,
            "domain": list(self.domain),
            "tolerance": self.tolerance,
            "max_defect": self.max_defect,
        }
        if self.params is not None:
            rec["alpha"] = self.params.alpha
            rec["m"] = self.params.m
        return rec


def _axis(lo, hi, n):
    return np.linspace(lo, hi, n + 1)


def _check_density(n):
    if int(n) != n or n < MIN_DENSITY:
        raise ParameterError(f"grid density must be an integer >= {MIN_DENSITY}, got {n!r}")


def _verdict(label, defect, sup, axes, n, params, domain):
    tol = SLACK_TOL * (1.0 + sup)
    # argmax returns the first maximum in C order, i.e. the lexicographically
    # smallest (x, y, t) among ties
    flat = int(np.argmax(defect))
    worst = float(defect.flat[flat])
    if worst > tol:
        idx = np.unravel_index(flat, defect.shape)
        witness = tuple(float(ax[i]) for ax, i in zip(axes, idx))
        return Certificate(label, "fail", n, worst, witness, params, domain, tol, worst)
    return Certificate(label, "pass", n, 0.0, None, params, domain, tol, worst)


def _alpha_m_defect(spec, xs, ys, ts, alpha, m):
    f = spec.func
    x = xs[:, None, None]
    y = ys[None, :, None]
    t = ts[None, None, :]
    fx = f(xs)[:, None, None]
    fy = f(ys)[None, :, None]
    ta = t ** alpha
    z = np.clip(t * x + m * (1.0 - t) * y, spec.lo, spec.hi)
    fz = f(z)
    defect = fz - ta * fx - m * (1.0 - ta) * fy
    sup = float(max(np.max(np.abs(fz)), np.max(np.abs(fx)), np.max(np.abs(fy))))
    return defect, sup


def certify_alpha_m_convex(spec: FunctionSpec, alpha: float, m: float,
                           n: int = DEFAULT_DENSITY) -> Certificate:
    """Check ``f(tx + m(1-t)y) <= t^alpha f(x) + m(1 - t^alpha) f(y)`` on ``[0, b]``."""
    params = ClassParams(alpha, m)
    _check_density(n)
    if spec.lo != 0.0:
        raise DomainError(f"(alpha, m)-convexity is defined on [0, b]; {spec.id} starts at {spec.lo}")
    xs = _axis(0.0, spec.hi, n)
    ts = _axis(0.0, 1.0, n)
    defect, sup = _alpha_m_defect(spec, xs, xs, ts, params.alpha, params.m)
    return _verdict(ClassLabel.ALPHA_M_CONVEX, defect, sup, (xs, xs, ts), n, params, spec.domain)


def certify_m_convex(spec: FunctionSpec, m: float, n: int = DEFAULT_DENSITY) -> Certificate:
    cert = certify_alpha_m_convex(spec, 1.0, m, n)
    return _relabel(cert, ClassLabel.M_CONVEX)


def certify_convex(spec: FunctionSpec, n: int = DEFAULT_DENSITY) -> Certificate:
    """Ordinary convexity on ``[lo, hi]`` (no requirement that ``lo = 0``)."""
    _check_density(n)
    params = ClassParams(1.0, 1.0)
    xs = _axis(spec.lo, spec.hi, n)
    ts = _axis(0.0, 1.0, n)
    defect, sup = _alpha_m_defect(spec, xs, xs, ts, 1.0, 1.0)
    return _verdict(ClassLabel.CONVEX, defect, sup, (xs, xs, ts), n, params, spec.domain)


def certify_quasi_convex(spec: FunctionSpec, n: int = DEFAULT_DENSITY) -> Certificate:
    """Check ``f(lam x + (1-lam) y) <= max(f(x), f(y))`` on ``[lo, hi]``."""
    _check_density(n)
    f = spec.func
    xs = _axis(spec.lo, spec.hi, n)
    ls = _axis(0.0, 1.0, n)
    fx = f(xs)
    top = np.maximum(fx[:, None], fx[None, :])[:, :, None]
    lam = ls[None, None, :]
    z = np.clip(lam * xs[:, None, None] + (1.0 - lam) * xs[None, :, None], spec.lo, spec.hi)
    fz = f(z)
    sup = float(max(np.max(np.abs(fz)), np.max(np.abs(fx))))
    return _verdict(ClassLabel.QUASI_CONVEX, fz - top, sup, (xs, xs, ls), n, None, spec.domain)


def certify_alpha_m_pair(spec: FunctionSpec, alpha: float, m: float, x: float, y: float,
                         n: int = 4 * DEFAULT_DENSITY) -> Certificate:
    """Defining inequality along ``t`` only, for one fixed pair ``(x, y)``.

    The bounds use the definition only at ``(a, b/m)`` and ``(b, a/m)``;
    this checks exactly those lines, which the tensor grid may miss.
    """
    params = ClassParams(alpha, m)
    _check_density(n)
    for v in (x, y):
        if not spec.contains(v):
            raise DomainError(f"{v!r} outside domain of {spec.id}")
    ts = _axis(0.0, 1.0, n)
    defect, sup = _alpha_m_defect(spec, np.array([x]), np.array([y]), ts, params.alpha, params.m)
    axes = (np.array([x]), np.array([y]), ts)
    return _verdict(ClassLabel.ALPHA_M_CONVEX, defect, sup, axes, n, params, spec.domain)


def _relabel(cert: Certificate, label: ClassLabel) -> Certificate:
    return Certificate(label, cert.verdict, cert.grid_density, cert.max_violation,
                       cert.witness, cert.params, cert.domain, cert.tolerance, cert.max_defect)


def certify_claim(spec: FunctionSpec, claim: Claim, n: int = DEFAULT_DENSITY) -> Certificate:
    if claim.label is ClassLabel.CONVEX:
        return certify_convex(spec, n)
    if claim.label is ClassLabel.M_CONVEX:
        return certify_m_convex(spec, claim.params.m, n)
    if claim.label is ClassLabel.ALPHA_M_CONVEX:
        return certify_alpha_m_convex(spec, claim.params.alpha, claim.params.m, n)
    return certify_quasi_convex(spec, n)


def monotone_witness(spec: FunctionSpec, lo: float, hi: float, direction: str,
                     n: int = 4 * DEFAULT_DENSITY):
    """First adjacent sample pair breaking monotonicity on ``[lo, hi]``, or None."""
    if direction not in ("increasing", "decreasing"):
        raise ParameterError(f"direction must be increasing or decreasing, got {direction!r}")
    xs = _axis(lo, hi, n)
    fx = spec.func(xs)
    tol = SLACK_TOL * (1.0 + float(np.max(np.abs(fx))))
    step = np.diff(fx)
    bad = step < -tol if direction == "increasing" else step > tol
    if not bad.any():
        return None
    i = int(np.argmax(bad))
    return (float(xs[i]), float(xs[i + 1]))


def require_monotone(spec: FunctionSpec, lo: float, hi: float, direction: str):
    witness = monotone_witness(spec, lo, hi, direction)
    if witness is not None:
        raise MonotonicityError(direction, witness)
