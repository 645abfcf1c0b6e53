"""Certify, integrate, bound and compare: single cases, sweeps and audits."""

from __future__ import annotations

import itertools
import logging
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import yaml

from . import bounds
from .certifier import (DEFAULT_DENSITY, certify_alpha_m_convex, certify_alpha_m_pair,
                        certify_quasi_convex, monotone_witness)
from .errors import (DomainError, EvaluationPointError, HypothesisError,
                     ParameterError, ToleranceNotMetError)
from .function_model import (ClassParams, ExponentParam, FunctionSpec, builtin_catalog,
                             power_transform, restrict)
from .quadrature import DEFAULT_TOL, WeightParams, weighted_integral
from .special_functions import beta

log = logging.getLogger(__name__)

THEOREMS = ("T14", "T15", "T21", "T22", "T23", "T31", "T32", "C31", "C32")
DIRECTIONS = ("increasing", "decreasing")
MAX_CASES = 100_000

REL_SLACK = 1e-9
ABS_SLACK = 1e-12
REDUCTION_TOL = 1e-12

# extra keys each theorem draws from the grid, in iteration order
_THEOREM_AXES = {
    "T14": ("m",),
    "T15": (),
    "T21": ("alpha", "m"),
    "T22": ("alpha", "m", "k"),
    "T23": ("alpha", "m", "l"),
    "T31": ("k",),
    "T32": ("l",),
    "C31": ("k", "direction"),
    "C32": ("l", "direction"),
}


@dataclass(frozen=True)
class ParamGrid:
    intervals: tuple = ((0.0, 1.0), (1.0, 3.0), (0.0, 0.5))
    p_values: tuple = (0.5, 1.0, 2.0, 3.5)
    q_values: tuple = (0.5, 1.0, 2.0, 3.5)
    alpha_values: tuple = (0.25, 0.5, 0.75, 1.0)
    m_values: tuple = (0.25, 0.5, 0.75, 1.0)
    k_values: tuple = (1.5, 2.0, 4.0)
    l_values: tuple = (1.0, 2.0, 3.0)

    def __post_init__(self):
        for name in ("intervals", "p_values", "q_values", "alpha_values", "m_values",
                     "k_values", "l_values"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "intervals",
                           tuple((float(a), float(b)) for a, b in self.intervals))
        if not self.intervals:
            raise ParameterError("grid needs at least one interval")
        for a, b in self.intervals:
            WeightParams(a, b, 1.0, 1.0)
        for p in self.p_values + self.q_values:
            if not p > 0:
                raise ParameterError(f"p and q values must be positive, got {p!r}")
        for v in self.alpha_values + self.m_values:
            ClassParams(v, 1.0)
        for k in self.k_values:
            ExponentParam("holder_k", k)
        for v in self.l_values:
            ExponentParam("power_l", v)

    @classmethod
    def from_mapping(cls, data: dict) -> "ParamGrid":
        keys = {"intervals": "intervals", "p": "p_values", "q": "q_values",
                "alpha": "alpha_values", "m": "m_values", "k": "k_values", "l": "l_values"}
        unknown = set(data) - set(keys) - set(keys.values())
        if unknown:
            raise ParameterError(f"unknown grid keys: {sorted(unknown)}")
        kwargs = {}
        for short, attr in keys.items():
            if short in data:
                kwargs[attr] = data[short]
            elif attr in data:
                kwargs[attr] = data[attr]
        for attr, values in kwargs.items():
            if attr == "intervals":
                kwargs[attr] = [tuple(float(v) for v in pair) for pair in values]
            else:
                kwargs[attr] = [float(v) for v in values]
        return cls(**kwargs)

    @classmethod
    def load(cls, path) -> "ParamGrid":
        if path == "default":
            return cls()
        with open(path) as fh:
            try:
                data = yaml.safe_load(fh)
            except yaml.YAMLError as exc:
                raise ParameterError(f"grid file {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ParameterError(f"grid file {path} must hold a key/value mapping")
        try:
            return cls.from_mapping(data)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ParameterError):
                raise
            raise ParameterError(f"grid file {path}: {exc}") from None

    def _axis(self, key):
        if key == "direction":
            return DIRECTIONS
        return getattr(self, f"{key}_values")

    def cases_for(self, theorem: str):
        """Parameter dicts for one theorem, in deterministic nested order."""
        extra = _THEOREM_AXES[theorem]
        axes = [self._axis(k) for k in extra]
        for (a, b), p, q in itertools.product(self.intervals, self.p_values, self.q_values):
            for combo in itertools.product(*axes):
                params = {"a": a, "b": b, "p": p, "q": q}
                params.update(zip(extra, combo))
                yield params


@dataclass
class BoundReport:
    case_id: str
    theorem: str
    params: dict
    lhs: float | None = None
    lhs_err: float | None = None
    rhs: float | None = None
    slack: float | None = None
    branch: str | None = None
    verdict: str = "pass"

    @property
    def skipped(self) -> bool:
        return self.verdict.startswith("skipped")

    @property
    def reason(self) -> str | None:
        return self.verdict[len("skipped("):-1] if self.skipped else None

    def as_record(self) -> dict:
        return {
            "case_id": self.case_id,
            "theorem": self.theorem,
            "params": dict(self.params),
            "lhs": self.lhs,
            "lhs_err": self.lhs_err,
            "rhs": self.rhs,
            "slack": self.slack,
            "branch": self.branch,
            "verdict": self.verdict,
        }


def case_id(spec_id: str, theorem: str, params: dict) -> str:
    parts = ",".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}"
                     for k, v in params.items())
    return f"{spec_id}/{theorem}/{parts}"


def inequality_holds(lhs: float, rhs: float, lhs_err: float) -> bool:
    """Non-strict comparison padded for quadrature error and rounding.

    The relative pad is taken on ``|rhs|``: scaling a negative right-hand
    side by ``1 + 1e-9`` would tighten the test instead of loosening it.
    """
    return lhs <= rhs + REL_SLACK * abs(rhs) + ABS_SLACK + lhs_err


def theorem_axes(theorem: str) -> tuple:
    """Parameter names a theorem needs beyond ``a, b, p, q``."""
    return _THEOREM_AXES[theorem]


def validate_params(theorem: str, params: dict) -> WeightParams:
    """Raise :class:`ParameterError` unless ``params`` meet the theorem's hypotheses."""
    if theorem not in THEOREMS:
        raise ParameterError(f"unknown theorem {theorem!r}")
    missing = [k for k in ("a", "b", "p", "q") + _THEOREM_AXES[theorem] if k not in params]
    if missing:
        raise ParameterError(f"{theorem} needs {missing}")
    w = WeightParams(params["a"], params["b"], params["p"], params["q"])
    if "alpha" in params or "m" in params:
        ClassParams(params.get("alpha", 1.0), params.get("m", 1.0))
    if "k" in params:
        ExponentParam("holder_k", params["k"])
    if "l" in params:
        ExponentParam("power_l", params["l"])
    if "direction" in params and params["direction"] not in DIRECTIONS:
        raise ParameterError(f"direction must be one of {DIRECTIONS}")
    return w


class _Skip(Exception):
    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


@dataclass
class RunCache:
    """Per-run memo of certificates and left-hand sides, keyed by spec id."""

    density: int = DEFAULT_DENSITY
    certs: dict = field(default_factory=dict)
    lhs: dict = field(default_factory=dict)

    def _memo(self, key, compute):
        if key not in self.certs:
            self.certs[key] = compute()
        return self.certs[key]

    def alpha_m(self, spec, power, alpha, m):
        def compute():
            target = spec if power == 1.0 else power_transform(spec, power)
            return certify_alpha_m_convex(target, alpha, m, self.density).passed
        return self._memo((spec.id, "alpha_m", power, alpha, m), compute)

    def alpha_m_pair(self, spec, power, alpha, m, x, y):
        def compute():
            target = spec if power == 1.0 else power_transform(spec, power)
            return certify_alpha_m_pair(target, alpha, m, x, y).passed
        return self._memo((spec.id, "pair", power, alpha, m, x, y), compute)

    def quasi(self, spec, power, a, b):
        def compute():
            target = restrict(spec, a, b)
            if power != 1.0:
                target = power_transform(target, power)
            return certify_quasi_convex(target, self.density).passed
        return self._memo((spec.id, "quasi", power, a, b), compute)

    def monotone(self, spec, a, b, direction):
        return self._memo((spec.id, "mono", a, b, direction),
                          lambda: monotone_witness(spec, a, b, direction) is None)

    def weighted(self, spec, w, tol):
        key = (spec.id, w, tol)
        if key not in self.lhs:
            try:
                self.lhs[key] = weighted_integral(spec, w, tol)
            except ToleranceNotMetError as exc:
                self.lhs[key] = exc
        res = self.lhs[key]
        if isinstance(res, ToleranceNotMetError):
            raise _Skip("quadrature")
        return res


def _require(ok: bool):
    if not ok:
        raise _Skip("class_certification_failed")


def _alpha_m_hypothesis(cache, spec, w, alpha, m, power):
    """(alpha, m)-convexity of |f|^power on [0, hi], plus the two lines the proof uses."""
    for x in (w.a / m, w.b / m):
        if not spec.contains(x):
            raise _Skip("evaluation_point_outside_domain")
    if spec.lo != 0.0:
        raise _Skip("domain_not_anchored_at_zero")
    _require(cache.alpha_m(spec, power, alpha, m))
    _require(cache.alpha_m_pair(spec, power, alpha, m, w.a, w.b / m))
    _require(cache.alpha_m_pair(spec, power, alpha, m, w.b, w.a / m))


def _certify_and_bound(cache, spec, theorem, w, params):
    th = theorem
    if th == "T14":
        m = params["m"]
        _alpha_m_hypothesis(cache, spec, w, 1.0, m, 1.0)
        return bounds.bound_thm14(spec, w, m)
    if th == "T15":
        _require(cache.quasi(spec, 1.0, w.a, w.b))
        return bounds.bound_thm15(spec, w)
    if th == "T21":
        _alpha_m_hypothesis(cache, spec, w, params["alpha"], params["m"], 1.0)
        return bounds.bound_thm21(spec, w, params["alpha"], params["m"])
    if th == "T22":
        k = params["k"]
        _alpha_m_hypothesis(cache, spec, w, params["alpha"], params["m"], k / (k - 1.0))
        return bounds.bound_thm22(spec, w, params["alpha"], params["m"], k)
    if th == "T23":
        _alpha_m_hypothesis(cache, spec, w, params["alpha"], params["m"], params["l"])
        return bounds.bound_thm23(spec, w, params["alpha"], params["m"], params["l"])
    if th in ("T31", "C31"):
        k = params["k"]
        _require(cache.quasi(spec, k / (k - 1.0), w.a, w.b))
    elif th in ("T32", "C32"):
        _require(cache.quasi(spec, params["l"], w.a, w.b))
    if th == "T31":
        return bounds.bound_thm31(spec, w, params["k"])
    if th == "T32":
        return bounds.bound_thm32(spec, w, params["l"])
    direction = params["direction"]
    if not cache.monotone(spec, w.a, w.b, direction):
        raise _Skip("not_monotone")
    if th == "C31":
        return bounds.bound_monotone_quasi(spec, w, "thm31_k", params["k"], direction)
    return bounds.bound_monotone_quasi(spec, w, "thm32_l", params["l"], direction)


def verify_case(spec: FunctionSpec, theorem: str, params: dict, tol: float = DEFAULT_TOL,
                cache: RunCache | None = None) -> BoundReport:
    """Run one (spec, theorem, parameters) case end to end.

    Hypotheses that cannot be certified, missing evaluation points and
    quadrature failures all become ``skipped(<reason>)`` verdicts; only a
    certified case can pass or fail.
    """
    if theorem not in THEOREMS:
        raise ParameterError(f"unknown theorem {theorem!r}")
    cache = cache if cache is not None else RunCache()
    report = BoundReport(case_id(spec.id, theorem, params), theorem, dict(params))
    try:
        try:
            w = validate_params(theorem, params)
        except ParameterError:
            raise _Skip("parameter_out_of_range") from None
        if not (spec.lo <= w.a and w.b <= spec.hi):
            raise _Skip("interval_outside_domain")
        try:
            bound = _certify_and_bound(cache, spec, theorem, w, params)
        except EvaluationPointError:
            raise _Skip("evaluation_point_outside_domain") from None
        except HypothesisError:
            raise _Skip("negative_endpoint") from None
        lhs = cache.weighted(spec, w, tol)
    except _Skip as skip:
        report.verdict = f"skipped({skip.reason})"
        return report

    report.lhs = lhs.value
    report.lhs_err = lhs.err_estimate
    report.rhs = bound.value
    report.slack = bound.value - lhs.value
    report.branch = bound.branch
    report.verdict = "pass" if inequality_holds(lhs.value, bound.value, lhs.err_estimate) else "fail"
    return report


def enumerate_cases(specs, grid: ParamGrid, theorems):
    for spec in specs:
        for theorem in theorems:
            for params in grid.cases_for(theorem):
                yield spec, theorem, params


def count_cases(specs, grid: ParamGrid, theorems) -> int:
    return sum(1 for _ in enumerate_cases(specs, grid, theorems))


# Set before the worker pool forks; workers read it instead of unpickling
# FunctionSpec closures.
_POOL_STATE = None


def _sweep_one_spec(index):
    specs, grid, theorems, tol, density = _POOL_STATE
    return _run_spec(specs[index], grid, theorems, tol, density)


def _run_spec(spec, grid, theorems, tol, density):
    cache = RunCache(density)
    return [verify_case(spec, th, params, tol, cache)
            for th in theorems for params in grid.cases_for(th)]


def sweep(specs, grid: ParamGrid, theorems=THEOREMS, tol: float = DEFAULT_TOL,
          jobs: int = 1, max_cases: int = MAX_CASES,
          density: int = DEFAULT_DENSITY) -> list[BoundReport]:
    """Every applicable (spec, theorem, params) case, in deterministic order.

    Work is split per spec so each worker keeps its own certificate cache;
    results are concatenated in spec order whatever order workers finish.
    """
    global _POOL_STATE
    specs = list(specs)
    theorems = list(theorems)
    if not specs or not theorems:
        raise ParameterError("sweep needs at least one spec and one theorem")
    for th in theorems:
        if th not in THEOREMS:
            raise ParameterError(f"unknown theorem {th!r}")
    total = count_cases(specs, grid, theorems)
    if total > max_cases:
        raise ParameterError(f"{total} cases exceed the cap of {max_cases}; raise --max-cases")
    log.info("sweep: %d specs, %d theorems, %d cases", len(specs), len(theorems), total)

    if jobs <= 1 or len(specs) == 1:
        chunks = [_run_spec(s, grid, theorems, tol, density) for s in specs]
    else:
        _POOL_STATE = (specs, grid, theorems, tol, density)
        try:
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
                chunks = list(pool.map(_sweep_one_spec, range(len(specs))))
        finally:
            _POOL_STATE = None
    return [r for chunk in chunks for r in chunk]


def summarize(reports) -> list[dict]:
    """Per-theorem counts and minimal slack, in canonical theorem order."""
    rows = {}
    for r in reports:
        row = rows.setdefault(r.theorem, {"theorem": r.theorem, "cases": 0, "passes": 0,
                                          "fails": 0, "skips": 0, "min_slack": None})
        row["cases"] += 1
        if r.skipped:
            row["skips"] += 1
            continue
        row["passes" if r.verdict == "pass" else "fails"] += 1
        if row["min_slack"] is None or r.slack < row["min_slack"]:
            row["min_slack"] = r.slack
    return [rows[t] for t in THEOREMS if t in rows]


def tightness_search(specs, theorem: str, grid: ParamGrid, tol: float = DEFAULT_TOL,
                     jobs: int = 1) -> BoundReport:
    """The certified case with the smallest slack; earliest case wins ties."""
    reports = sweep(specs, grid, [theorem], tol, jobs=jobs)
    best = None
    for r in reports:
        if r.skipped:
            continue
        if best is None or r.slack < best.slack:
            best = r
    if best is None:
        raise ParameterError(f"{theorem} applies to none of the given specs")
    return best


# ---------------------------------------------------------------------------
# reduction audit
# ---------------------------------------------------------------------------

@dataclass
class Residual:
    name: str
    max_residual: float = 0.0
    count: int = 0
    worst_case: str | None = None

    def add(self, value: float, where: str):
        self.count += 1
        if self.worst_case is None or value > self.max_residual:
            self.max_residual = value
            self.worst_case = where

    @property
    def ok(self) -> bool:
        return self.max_residual <= REDUCTION_TOL

    def as_record(self) -> dict:
        return {"check": self.name, "max_residual": self.max_residual, "count": self.count,
                "worst_case": self.worst_case, "tolerance": REDUCTION_TOL,
                "verdict": "pass" if self.ok else "fail"}


def _rel(x, y):
    return abs(x - y) / (1.0 + abs(y))


def reduction_audit(grid: ParamGrid, specs=None) -> list[Residual]:
    """Relative residuals of the algebraic special cases over the grid.

    Beta identities are measured relative to the Beta value; bound
    reductions relative to ``1 + |bound|``.
    """
    specs = builtin_catalog() if specs is None else list(specs)
    beta_id = Residual("beta_q1p1_minus_q2p1_equals_q1p2")
    beta_id2 = Residual("beta_q1p1_minus_q1p2_equals_q2p1")
    t21_t14 = Residual("T21_alpha1_vs_T14")
    t22_r2 = Residual("T22_alpha1_m1_vs_convex_display")
    t23_r3 = Residual("T23_alpha1_m1_vs_convex_display")
    equal_pq = Residual("equal_pq_forms_vs_general")

    pq = sorted(set(grid.p_values) | set(grid.q_values))
    for p, q in itertools.product(pq, pq):
        where = f"p={p:g},q={q:g}"
        target = beta(q + 1, p + 2)
        beta_id.add(abs(beta(q + 1, p + 1) - beta(q + 2, p + 1) - target) / target, where)
        target = beta(q + 2, p + 1)
        beta_id2.add(abs(beta(q + 1, p + 1) - beta(q + 1, p + 2) - target) / target, where)

    for spec in specs:
        for (a, b), p, q in itertools.product(grid.intervals, grid.p_values, grid.q_values):
            if not (spec.lo <= a and b <= spec.hi):
                continue
            w = WeightParams(a, b, p, q)
            where = f"{spec.id}/a={a:g},b={b:g},p={p:g},q={q:g}"
            for m in grid.m_values:
                try:
                    t14 = bounds.bound_thm14(spec, w, m).value
                    t21 = bounds.bound_thm21(spec, w, 1.0, m).value
                except EvaluationPointError:
                    continue
                t21_t14.add(_rel(t21, t14), f"{where},m={m:g}")
            for k in grid.k_values:
                t22_r2.add(_rel(bounds.bound_thm22(spec, w, 1.0, 1.0, k).value,
                                bounds.convex_holder_bound(spec, w, k)), f"{where},k={k:g}")
            for l in grid.l_values:
                t23_r3.add(_rel(bounds.bound_thm23(spec, w, 1.0, 1.0, l).value,
                                bounds.convex_power_mean_bound(spec, w, l)), f"{where},l={l:g}")
            if p in grid.q_values:
                wp = WeightParams(a, b, p, p)
                for alpha, m in itertools.product(grid.alpha_values, grid.m_values):
                    try:
                        general = [bounds.bound_thm21(spec, wp, alpha, m).value]
                        special = [bounds.bound_thm21_equal_pq(spec, a, b, p, alpha, m).value]
                        for k in grid.k_values:
                            general.append(bounds.bound_thm22(spec, wp, alpha, m, k).value)
                            special.append(bounds.bound_thm22_equal_pq(spec, a, b, p, alpha, m, k).value)
                        for l in grid.l_values:
                            general.append(bounds.bound_thm23(spec, wp, alpha, m, l).value)
                            special.append(bounds.bound_thm23_equal_pq(spec, a, b, p, alpha, m, l).value)
                    except EvaluationPointError:
                        continue
                    equal_pq.add(max(_rel(s, g) for s, g in zip(special, general)),
                                 f"{spec.id}/a={a:g},b={b:g},p=q={p:g},alpha={alpha:g},m={m:g}")
    return [beta_id, beta_id2, t21_t14, t22_r2, t23_r3, equal_pq]


def lemma_check(specs, grid: ParamGrid, tol: float = DEFAULT_TOL, extra_exponents=(1.5,)):
    """Residual records of the change-of-variables identity over the grid."""
    from .quadrature import lemma_identity_residual

    exps = sorted(set(grid.p_values) | set(grid.q_values) | set(extra_exponents))
    out = []
    for spec in specs:
        for (a, b), p, q in itertools.product(grid.intervals, exps, exps):
            if not (spec.lo <= a and b <= spec.hi):
                continue
            w = WeightParams(a, b, p, q)
            rec = {"spec": spec.id, "a": a, "b": b, "p": p, "q": q, "tol": tol,
                   "smooth": spec.smooth}
            try:
                res = lemma_identity_residual(spec, w, tol)
            except (ToleranceNotMetError, DomainError) as exc:
                rec.update(residual=None, verdict=f"skipped({type(exc).__name__})")
            else:
                rec.update(residual=res, verdict="pass" if res <= 2.0 * tol else "fail")
            out.append(rec)
    return out

