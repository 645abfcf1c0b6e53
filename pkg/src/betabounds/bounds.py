"""Closed-form right-hand sides of the weighted-integral inequalities.

Every bound has the shape ``(b-a)^(p+q+1) * C``, where ``C`` combines Beta
values with f (or |f|^r) at the endpoints ``a``, ``b`` and, for the
(alpha, m)-convex family, at ``a/m`` and ``b/m``.

Two-branch bounds come from the two substitutions ``x = ta + (1-t)b``
(branch ``from_a``: f(a) and f(b/m)) and ``x = tb + (1-t)a`` (branch
``from_b``: f(b) and f(a/m)).  Each branch is a valid bound on its own;
the published bound is their minimum, ties going to ``from_a``.

Nothing here checks class membership.  That is the harness's job.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .certifier import require_monotone
from .errors import EvaluationPointError, HypothesisError, ParameterError
from .function_model import ClassParams, ExponentParam, FunctionSpec
from .quadrature import WeightParams
from .special_functions import beta

FROM_A = "from_a"
FROM_B = "from_b"
SINGLE = "single"

_BRANCH_CHOICES = ("both", FROM_A, FROM_B)


@dataclass(frozen=True)
class BoundValue:
    value: float
    branch: str
    terms: dict = field(default_factory=dict)
    branch_values: dict = field(default_factory=dict)


def _at(spec: FunctionSpec, x: float) -> float:
    if not spec.contains(x):
        raise EvaluationPointError(x, spec.domain)
    return float(spec(x))


def _holder_k(k) -> float:
    return ExponentParam("holder_k", k).value


def _power_l(l) -> float:
    return ExponentParam("power_l", l).value


def _two_branch(branches, branch_a, branch_b, terms):
    """Evaluate the requested branches lazily and pick the minimum."""
    if branches not in _BRANCH_CHOICES:
        raise ParameterError(f"branches must be one of {_BRANCH_CHOICES}, got {branches!r}")
    values = {}
    if branches in ("both", FROM_A):
        values[FROM_A] = branch_a()
    if branches in ("both", FROM_B):
        values[FROM_B] = branch_b()
    if len(values) == 1:
        (tag, v), = values.items()
        return BoundValue(v, tag, terms, values)
    a_val, b_val = values[FROM_A], values[FROM_B]
    if a_val <= b_val:
        return BoundValue(a_val, FROM_A, terms, values)
    return BoundValue(b_val, FROM_B, terms, values)


def bound_thm14(spec: FunctionSpec, w: WeightParams, m: float, branches="both") -> BoundValue:
    """m-convex f: Beta coefficients ``B(q+2, p+1)`` and ``B(q+1, p+2)``."""
    m = ClassParams(1.0, m).m
    p, q, s = w.p, w.q, w.scale
    b_q2 = beta(q + 2, p + 1)
    b_p2 = beta(q + 1, p + 2)
    terms = {"beta_q2_p1": b_q2, "beta_q1_p2": b_p2, "scale": s}

    def branch_a():
        fa, fbm = _at(spec, w.a), _at(spec, w.b / m)
        terms.update(f_a=fa, f_b_over_m=fbm)
        return s * (b_q2 * fa + m * b_p2 * fbm)

    def branch_b():
        fb, fam = _at(spec, w.b), _at(spec, w.a / m)
        terms.update(f_b=fb, f_a_over_m=fam)
        return s * (b_p2 * fb + m * b_q2 * fam)

    return _two_branch(branches, branch_a, branch_b, terms)


def bound_thm15(spec: FunctionSpec, w: WeightParams) -> BoundValue:
    """Quasi-convex f: ``max{f(a), f(b)} B(p+1, q+1)``."""
    fa, fb = _at(spec, w.a), _at(spec, w.b)
    bpq = beta(w.p + 1, w.q + 1)
    value = w.scale * max(fa, fb) * bpq
    return BoundValue(value, SINGLE, {"beta_p1_q1": bpq, "f_a": fa, "f_b": fb, "scale": w.scale})


def _alpha_m_coefficients(w: WeightParams, alpha: float):
    p, q = w.p, w.q
    b_full = beta(q + 1, p + 1)
    b_qa = beta(q + alpha + 1, p + 1)
    b_pa = beta(q + 1, p + alpha + 1)
    return b_full, b_qa, b_pa


def bound_thm21(spec: FunctionSpec, w: WeightParams, alpha: float, m: float,
                branches="both") -> BoundValue:
    """(alpha, m)-convex f.

    Branch ``from_a``: ``B(q+a+1, p+1) f(a) + m [B(q+1, p+1) - B(q+a+1, p+1)] f(b/m)``;
    ``from_b`` mirrors it with ``B(q+1, p+a+1)``, f(b) and f(a/m).
    """
    cp = ClassParams(alpha, m)
    alpha, m = cp.alpha, cp.m
    s = w.scale
    b_full, b_qa, b_pa = _alpha_m_coefficients(w, alpha)
    terms = {"beta_q1_p1": b_full, "beta_qa_p1": b_qa, "beta_q1_pa": b_pa, "scale": s}

    def branch_a():
        fa, fbm = _at(spec, w.a), _at(spec, w.b / m)
        terms.update(f_a=fa, f_b_over_m=fbm)
        return s * (b_qa * fa + m * (b_full - b_qa) * fbm)

    def branch_b():
        fb, fam = _at(spec, w.b), _at(spec, w.a / m)
        terms.update(f_b=fb, f_a_over_m=fam)
        return s * (b_pa * fb + m * (b_full - b_pa) * fam)

    return _two_branch(branches, branch_a, branch_b, terms)


def bound_thm22(spec: FunctionSpec, w: WeightParams, alpha: float, m: float, k: float,
                branches="both") -> BoundValue:
    """|f|^(k/(k-1)) (alpha, m)-convex, via Hoelder with exponent k."""
    cp = ClassParams(alpha, m)
    alpha, m = cp.alpha, cp.m
    k = _holder_k(k)
    r = k / (k - 1.0)
    inv_r = (k - 1.0) / k
    bk = beta(k * w.p + 1, k * w.q + 1)
    front = w.scale / (alpha + 1.0) ** inv_r * bk ** (1.0 / k)
    terms = {"beta_kp1_kq1": bk, "front": front, "r": r}

    def branch_a():
        fa, fbm = _at(spec, w.a), _at(spec, w.b / m)
        terms.update(f_a=fa, f_b_over_m=fbm)
        return front * (abs(fa) ** r + alpha * m * abs(fbm) ** r) ** inv_r

    def branch_b():
        fb, fam = _at(spec, w.b), _at(spec, w.a / m)
        terms.update(f_b=fb, f_a_over_m=fam)
        return front * (abs(fb) ** r + alpha * m * abs(fam) ** r) ** inv_r

    return _two_branch(branches, branch_a, branch_b, terms)


def bound_thm23(spec: FunctionSpec, w: WeightParams, alpha: float, m: float, l: float,
                branches="both") -> BoundValue:
    """|f|^l (alpha, m)-convex, via the power-mean split of the weight."""
    cp = ClassParams(alpha, m)
    alpha, m = cp.alpha, cp.m
    l = _power_l(l)
    b_full, b_qa, b_pa = _alpha_m_coefficients(w, alpha)
    front = w.scale * b_full ** ((l - 1.0) / l)
    terms = {"beta_q1_p1": b_full, "beta_qa_p1": b_qa, "beta_q1_pa": b_pa, "front": front}

    def branch_a():
        fa, fbm = _at(spec, w.a), _at(spec, w.b / m)
        terms.update(f_a=fa, f_b_over_m=fbm)
        inner = b_qa * abs(fa) ** l + m * (b_full - b_qa) * abs(fbm) ** l
        return front * inner ** (1.0 / l)

    def branch_b():
        fb, fam = _at(spec, w.b), _at(spec, w.a / m)
        terms.update(f_b=fb, f_a_over_m=fam)
        inner = b_pa * abs(fb) ** l + m * (b_full - b_pa) * abs(fam) ** l
        return front * inner ** (1.0 / l)

    return _two_branch(branches, branch_a, branch_b, terms)


def bound_thm31(spec: FunctionSpec, w: WeightParams, k: float) -> BoundValue:
    """|f|^(k/(k-1)) quasi-convex on [a, b]."""
    k = _holder_k(k)
    r = k / (k - 1.0)
    fa, fb = _at(spec, w.a), _at(spec, w.b)
    bk = beta(k * w.p + 1, k * w.q + 1)
    top = max(abs(fa) ** r, abs(fb) ** r)
    value = w.scale * bk ** (1.0 / k) * top ** ((k - 1.0) / k)
    return BoundValue(value, SINGLE, {"beta_kp1_kq1": bk, "f_a": fa, "f_b": fb, "r": r})


def bound_thm32(spec: FunctionSpec, w: WeightParams, l: float) -> BoundValue:
    """|f|^l quasi-convex on [a, b]."""
    l = _power_l(l)
    fa, fb = _at(spec, w.a), _at(spec, w.b)
    bpq = beta(w.p + 1, w.q + 1)
    top = max(abs(fa) ** l, abs(fb) ** l)
    value = w.scale * bpq * top ** (1.0 / l)
    return BoundValue(value, SINGLE, {"beta_p1_q1": bpq, "f_a": fa, "f_b": fb})


def bound_monotone_quasi(spec: FunctionSpec, w: WeightParams, variant: str, exponent: float,
                         direction: str) -> BoundValue:
    """Monotone specialisations: the endpoint max is replaced by f(b) or f(a).

    ``variant`` is ``"thm31_k"`` (exponent k > 1) or ``"thm32_l"``
    (exponent l >= 1).  For the Hoelder variant the endpoint value must be
    nonnegative: the factor ``B(kp+1, kq+1)^(1/k)`` exceeds ``B(p+1, q+1)``,
    so multiplying it into a negative f(b) would undercut the integral.
    """
    if variant == "thm31_k":
        k = _holder_k(exponent)
        factor = beta(k * w.p + 1, k * w.q + 1) ** (1.0 / k)
    elif variant == "thm32_l":
        _power_l(exponent)
        factor = beta(w.p + 1, w.q + 1)
    else:
        raise ParameterError(f"variant must be thm31_k or thm32_l, got {variant!r}")
    require_monotone(spec, w.a, w.b, direction)
    x_end = w.b if direction == "increasing" else w.a
    f_end = _at(spec, x_end)
    if variant == "thm31_k" and f_end < 0:
        raise HypothesisError(f"f({x_end!r}) = {f_end!r} < 0; the Hoelder-form bound needs it nonnegative")
    return BoundValue(w.scale * factor * f_end, SINGLE,
                      {"factor": factor, "endpoint": x_end, "f_endpoint": f_end})


# ---------------------------------------------------------------------------
# special cases, written out independently for the reduction audit
# ---------------------------------------------------------------------------

def convex_holder_bound(spec: FunctionSpec, w: WeightParams, k: float) -> float:
    """|f|^(k/(k-1)) convex: the alpha = m = 1 form of the Hoelder bound."""
    k = _holder_k(k)
    r = k / (k - 1.0)
    fa, fb = _at(spec, w.a), _at(spec, w.b)
    return (w.scale / 2.0 ** ((k - 1.0) / k) * beta(k * w.p + 1, k * w.q + 1) ** (1.0 / k)
            * (abs(fa) ** r + abs(fb) ** r) ** ((k - 1.0) / k))


def convex_power_mean_bound(spec: FunctionSpec, w: WeightParams, l: float) -> float:
    """|f|^l convex: the alpha = m = 1 form of the power-mean bound."""
    l = _power_l(l)
    p, q = w.p, w.q
    fa, fb = _at(spec, w.a), _at(spec, w.b)
    inner = beta(q + 2, p + 1) * abs(fa) ** l + beta(q + 1, p + 2) * abs(fb) ** l
    return w.scale * beta(p + 1, q + 1) ** ((l - 1.0) / l) * inner ** (1.0 / l)


def bound_thm21_equal_pq(spec, a, b, p, alpha, m, branches="both"):
    return bound_thm21(spec, WeightParams(a, b, p, p), alpha, m, branches)


def bound_thm22_equal_pq(spec, a, b, p, alpha, m, k, branches="both"):
    return bound_thm22(spec, WeightParams(a, b, p, p), alpha, m, k, branches)


def bound_thm23_equal_pq(spec, a, b, p, alpha, m, l, branches="both"):
    return bound_thm23(spec, WeightParams(a, b, p, p), alpha, m, l, branches)
