"""Test functions, their domains, and the class memberships we claim for them."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, ParameterError


class ClassLabel(str, enum.Enum):
    CONVEX = "convex"
    M_CONVEX = "m_convex"
    ALPHA_M_CONVEX = "alpha_m_convex"
    QUASI_CONVEX = "quasi_convex"


@dataclass(frozen=True)
class ClassParams:
    """``(alpha, m)`` of an (alpha, m)-convexity claim; both in ``(0, 1]``."""

    alpha: float = 1.0
    m: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "m"):
            v = getattr(self, name)
            if not (0.0 < v <= 1.0):
                raise ParameterError(f"{name} must lie in (0, 1], got {v!r}")


@dataclass(frozen=True)
class ExponentParam:
    """Hoelder exponent ``k > 1`` or power-mean exponent ``l >= 1``."""

    kind: str
    value: float

    def __post_init__(self):
        if self.kind == "holder_k":
            if not self.value > 1.0:
                raise ParameterError(f"k must exceed 1, got {self.value!r}")
        elif self.kind == "power_l":
            if not self.value >= 1.0:
                raise ParameterError(f"l must be at least 1, got {self.value!r}")
        else:
            raise ParameterError(f"unknown exponent kind {self.kind!r}")
        if not math.isfinite(self.value):
            raise ParameterError("exponent must be finite")

    @property
    def power(self) -> float:
        """The power ``r`` applied to ``|f|``: ``k/(k-1)`` or ``l``."""
        if self.kind == "holder_k":
            return self.value / (self.value - 1.0)
        return self.value


@dataclass(frozen=True)
class Claim:
    """A class membership asserted by the catalog.

    ``holds=False`` records a planted non-membership that certification
    is expected to refute.
    """

    label: ClassLabel
    params: ClassParams = ClassParams()
    holds: bool = True

    def describe(self) -> str:
        if self.label is ClassLabel.ALPHA_M_CONVEX:
            tag = f"{self.label.value}(alpha={self.params.alpha:g},m={self.params.m:g})"
        elif self.label is ClassLabel.M_CONVEX:
            tag = f"{self.label.value}(m={self.params.m:g})"
        else:
            tag = self.label.value
        return tag if self.holds else "not " + tag


@dataclass(frozen=True, eq=False)
class FunctionSpec:
    """A deterministic vectorised function on ``[lo, hi]`` with claimed classes.

    ``func`` takes and returns numpy arrays; use :func:`evaluate` for
    domain-checked scalar evaluation.
    """

    id: str
    lo: float
    hi: float
    func: Callable[[np.ndarray], np.ndarray]
    claims: tuple[Claim, ...] = ()
    formula: str = ""
    smooth: bool = True

    def __post_init__(self):
        if not (0.0 <= self.lo < self.hi and math.isfinite(self.hi)):
            raise DomainError(f"{self.id}: need 0 <= lo < hi < inf, got [{self.lo}, {self.hi}]")

    @property
    def domain(self) -> tuple[float, float]:
        return (self.lo, self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __call__(self, x):
        return np.asarray(self.func(np.asarray(x, dtype=float)), dtype=float)


def evaluate(spec: FunctionSpec, x: float) -> float:
    if not spec.contains(x):
        raise DomainError(f"{x!r} outside domain [{spec.lo!r}, {spec.hi!r}] of {spec.id}")
    return float(spec(x))


def power_transform(spec: FunctionSpec, r: float) -> FunctionSpec:
    """``|f|^r`` on the same domain, with no claims carried over."""
    if not r >= 1.0:
        raise ParameterError(f"power must be at least 1, got {r!r}")
    f = spec.func

    def g(x):
        return np.abs(f(x)) ** r

    return FunctionSpec(f"|{spec.id}|^{r:g}", spec.lo, spec.hi, g,
                        formula=f"|{spec.formula or spec.id}|^{r:g}", smooth=spec.smooth)


def restrict(spec: FunctionSpec, lo: float, hi: float) -> FunctionSpec:
    if not (spec.lo <= lo < hi <= spec.hi):
        raise DomainError(f"[{lo}, {hi}] not inside domain of {spec.id}")
    return FunctionSpec(f"{spec.id}[{lo:g},{hi:g}]", lo, hi, spec.func,
                        formula=spec.formula, smooth=spec.smooth)


def reflected(spec: FunctionSpec, a: float, b: float) -> FunctionSpec:
    """``x -> f(a + b - x)`` on ``[a, b]``."""
    if not (spec.lo <= a < b <= spec.hi):
        raise DomainError(f"[{a}, {b}] not inside domain of {spec.id}")
    f = spec.func
    s = a + b

    def g(x):
        return f(s - x)

    return FunctionSpec(f"{spec.id}~", a, b, g, smooth=spec.smooth)


def linear_combination(terms, id="combo") -> FunctionSpec:
    """``sum c_i f_i`` on the intersection of the domains."""
    terms = list(terms)
    lo = max(s.lo for _, s in terms)
    hi = min(s.hi for _, s in terms)

    def g(x):
        return sum(c * s.func(x) for c, s in terms)

    return FunctionSpec(id, lo, hi, g, smooth=all(s.smooth for _, s in terms))


# ---------------------------------------------------------------------------
# builtin catalog
# ---------------------------------------------------------------------------

# Wide enough that b/m and a/m stay inside for every default interval
# (largest b = 3, smallest m = 0.25).
CATALOG_HI = 12.0

_M_GRID = (0.25, 0.5, 0.75, 1.0)


def _const(c):
    def f(x):
        return np.full(np.shape(x), float(c))
    return f


def _mc(*ms):
    return tuple(Claim(ClassLabel.M_CONVEX, ClassParams(m=m)) for m in ms)


def _amc(*pairs, holds=True):
    return tuple(Claim(ClassLabel.ALPHA_M_CONVEX, ClassParams(a, m), holds) for a, m in pairs)


CONVEX = Claim(ClassLabel.CONVEX)
QUASI = Claim(ClassLabel.QUASI_CONVEX)
NOT_CONVEX = Claim(ClassLabel.CONVEX, holds=False)
NOT_QUASI = Claim(ClassLabel.QUASI_CONVEX, holds=False)


def builtin_catalog() -> list[FunctionSpec]:
    """The specimen corpus used by tests, sweeps and the CLI.

    Convex functions with ``f(0) <= 0`` are m-convex for every m, which is
    what most of the m-convex claims below rely on.  Non-constant smooth
    functions are never (alpha, m)-convex with alpha < 1 at m = 1, so the
    only alpha < 1 claims are on constants.
    """
    hi = CATALOG_HI
    return [
        FunctionSpec("identity", 0.0, hi, lambda x: x * 1.0,
                     (CONVEX, QUASI) + _mc(*_M_GRID) + _amc((1.0, 0.5)),
                     formula="x"),
        FunctionSpec("const_pos", 0.0, hi, _const(1.0),
                     (CONVEX, QUASI) + _amc((0.25, 1.0), (0.5, 1.0))
                     + _amc((1.0, 0.5), holds=False),
                     formula="1"),
        FunctionSpec("const_neg", 0.0, hi, _const(-1.0),
                     (CONVEX, QUASI) + _mc(0.25, 0.5)
                     + _amc((0.25, 0.25), (0.5, 0.75), (0.75, 0.5), (0.25, 1.0)),
                     formula="-1"),
        FunctionSpec("square", 0.0, hi, lambda x: x * x,
                     (CONVEX, QUASI) + _mc(0.25, 0.5) + _amc((1.0, 0.75))
                     + _amc((0.5, 1.0), holds=False),
                     formula="x^2"),
        FunctionSpec("pow_1_5", 0.0, hi, lambda x: x ** 1.5,
                     (CONVEX, QUASI) + _mc(0.5), formula="x^1.5"),
        FunctionSpec("cube", 0.0, hi, lambda x: x ** 3,
                     (CONVEX, QUASI) + _mc(0.25), formula="x^3"),
        FunctionSpec("affine_up", 0.0, hi, lambda x: 2.0 * x + 1.0,
                     (CONVEX, QUASI) + _amc((1.0, 0.5), holds=False),
                     formula="2x+1"),
        FunctionSpec("affine_shift", 0.0, hi, lambda x: 2.0 * x - 1.0,
                     (CONVEX, QUASI) + _mc(0.5), formula="2x-1"),
        FunctionSpec("expm1", 0.0, hi, np.expm1,
                     (CONVEX, QUASI) + _mc(0.25, 0.75), formula="e^x-1"),
        FunctionSpec("exp_neg", 0.0, hi, lambda x: np.exp(-x),
                     (CONVEX, QUASI) + _amc((1.0, 0.5), holds=False),
                     formula="e^-x"),
        FunctionSpec("sqrt", 0.0, hi, np.sqrt,
                     (QUASI, NOT_CONVEX), formula="x^0.5", smooth=False),
        FunctionSpec("vee_sqrt", 0.0, hi, lambda x: np.sqrt(np.abs(x - 1.5)),
                     (QUASI, NOT_CONVEX), formula="|x-1.5|^0.5", smooth=False),
        FunctionSpec("neg_bump", 0.0, 1.0, lambda x: -(x - 0.5) ** 2,
                     (NOT_QUASI, NOT_CONVEX), formula="-(x-1/2)^2"),
    ]


def catalog_by_id() -> dict[str, FunctionSpec]:
    return {s.id: s for s in builtin_catalog()}


def get_spec(spec_id: str) -> FunctionSpec:
    try:
        return catalog_by_id()[spec_id]
    except KeyError:
        raise DomainError(f"no catalog specimen named {spec_id!r}") from None
