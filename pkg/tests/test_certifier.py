import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from betabounds.certifier import (certify_alpha_m_convex, certify_alpha_m_pair, certify_claim,
                                  certify_convex, certify_m_convex, certify_quasi_convex,
                                  monotone_witness, require_monotone)
from betabounds.errors import DomainError, MonotonicityError, ParameterError
from betabounds.function_model import ClassLabel, FunctionSpec, builtin_catalog, get_spec


def unit(id, f):
    return FunctionSpec(id, 0.0, 1.0, f)


SQUARE = unit("square", lambda x: x * x)
IDENT = unit("identity", lambda x: x * 1.0)
ONE = unit("one", lambda x: np.full(np.shape(x), 1.0))
MINUS_ONE = unit("minus_one", lambda x: np.full(np.shape(x), -1.0))
EXP_NEG = unit("exp_neg", lambda x: np.exp(-x))
NEG_BUMP = get_spec("neg_bump")


def brute_force(f, lo, hi, n, defect):
    """Pure-Python scan of the n+1 point grid; first strict maximum in (x, y, t) order."""
    pts = [lo + (hi - lo) * i / n for i in range(n + 1)]
    ts = [i / n for i in range(n + 1)]
    best, where = None, None
    for x, y, t in itertools.product(pts, pts, ts):
        d = defect(f, x, y, t)
        if best is None or d > best:
            best, where = d, (x, y, t)
    return best, where


def quasi_defect(f, x, y, t):
    return f(t * x + (1 - t) * y) - max(f(x), f(y))


def alpha_m_defect(alpha, m):
    def d(f, x, y, t):
        return f(t * x + m * (1 - t) * y) - t ** alpha * f(x) - m * (1 - t ** alpha) * f(y)
    return d


@pytest.mark.parametrize("cert", [
    lambda: certify_alpha_m_convex(SQUARE, 1, 1, 32),
    lambda: certify_alpha_m_convex(IDENT, 1, 0.5, 32),
    lambda: certify_m_convex(SQUARE, 1, 32),
    lambda: certify_m_convex(MINUS_ONE, 0.5, 32),
    lambda: certify_quasi_convex(EXP_NEG, 32),
    lambda: certify_quasi_convex(SQUARE, 32),
])
def test_pass_examples(cert):
    c = cert()
    assert c.verdict == "pass"
    assert c.max_violation == 0.0 and c.witness is None
    assert c.grid_density == 32


def test_constant_one_is_not_half_convex():
    c = certify_m_convex(ONE, 0.5, 32)
    assert c.verdict == "fail"
    # defect (1 - t)/2 is largest at t = 0
    assert c.max_violation == pytest.approx(0.5)
    assert c.witness[2] == 0.0


def test_neg_bump_quasi_witness():
    c = certify_quasi_convex(NEG_BUMP, 32)
    assert c.verdict == "fail"
    assert c.witness == (0.0, 1.0, 0.5)
    assert c.max_violation == pytest.approx(0.25)


def test_neg_bump_convex_witness():
    c = certify_alpha_m_convex(NEG_BUMP, 1, 1, 32)
    assert c.verdict == "fail"
    x, y, t = c.witness
    # defect t(1-t)(x-y)^2, largest at the far corners and t = 1/2
    assert abs(x - y) == 1.0 and t == 0.5
    assert c.max_violation == pytest.approx(0.25)


@pytest.mark.parametrize("spec, defect, check", [
    (NEG_BUMP, quasi_defect, lambda s, n: certify_quasi_convex(s, n)),
    (NEG_BUMP, alpha_m_defect(1, 1), lambda s, n: certify_alpha_m_convex(s, 1, 1, n)),
    (ONE, alpha_m_defect(1, 0.5), lambda s, n: certify_m_convex(s, 0.5, n)),
    (get_spec("neg_bump"), alpha_m_defect(0.5, 0.75), lambda s, n: certify_alpha_m_convex(s, 0.5, 0.75, n)),
])
def test_vectorised_scan_matches_brute_force(spec, defect, check):
    n = 16
    f = lambda x: float(spec.func(np.float64(x)))  # noqa: E731
    best, where = brute_force(f, spec.lo, spec.hi, n, defect)
    c = check(spec, n)
    assert c.max_defect == pytest.approx(best, abs=1e-15)
    if c.verdict == "fail":
        assert c.witness == pytest.approx(where)


def test_verdict_witness_invariant():
    for spec in builtin_catalog():
        for c in (certify_quasi_convex(spec, 16), certify_convex(spec, 16)):
            assert (c.verdict == "fail") == (c.max_violation > c.tolerance) == (c.witness is not None)


@pytest.mark.parametrize("alpha, m", [(0.0, 1.0), (1.0, 0.0), (1.2, 1.0)])
def test_parameter_range(alpha, m):
    with pytest.raises(ParameterError):
        certify_alpha_m_convex(SQUARE, alpha, m, 32)


def test_density_floor():
    with pytest.raises(ParameterError):
        certify_quasi_convex(SQUARE, 8)


def test_domain_must_start_at_zero():
    shifted = FunctionSpec("shifted", 1.0, 2.0, lambda x: x * x)
    with pytest.raises(DomainError):
        certify_alpha_m_convex(shifted, 1, 1, 32)
    assert certify_convex(shifted, 32).passed
    assert certify_quasi_convex(shifted, 32).passed


def test_all_catalog_claims_confirmed():
    for spec in builtin_catalog():
        for claim in spec.claims:
            assert certify_claim(spec, claim, 64).passed is claim.holds, (spec.id, claim.describe())


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([s.id for s in builtin_catalog()]),
       st.sampled_from([0.25, 0.5, 0.75, 1.0]), st.sampled_from([0.25, 0.5, 0.75, 1.0]),
       st.sampled_from([16, 32]))
def test_evidence_is_monotone_in_density(spec_id, alpha, m, n):
    spec = get_spec(spec_id)
    coarse = certify_alpha_m_convex(spec, alpha, m, n)
    fine = certify_alpha_m_convex(spec, alpha, m, 2 * n)
    if not coarse.passed:
        assert not fine.passed
    # nested grids: the fine scan sees every coarse point
    assert fine.max_defect >= coarse.max_defect


@pytest.mark.parametrize("spec", builtin_catalog(), ids=lambda s: s.id)
def test_hierarchy_and_consistency(spec):
    convex = certify_convex(spec, 32)
    if spec.lo == 0.0:
        am = certify_alpha_m_convex(spec, 1, 1, 32)
        assert am.verdict == convex.verdict
        assert am.max_defect == convex.max_defect
    if convex.passed:
        assert certify_quasi_convex(spec, 32).passed


def test_pair_check_agrees_with_definition():
    sq = get_spec("square")
    assert certify_alpha_m_pair(sq, 1.0, 0.75, 1.0, 3.0 / 0.75).passed
    one = get_spec("const_pos")
    c = certify_alpha_m_pair(one, 1.0, 0.5, 0.0, 2.0)
    assert not c.passed and c.witness[:2] == (0.0, 2.0)
    with pytest.raises(DomainError):
        certify_alpha_m_pair(NEG_BUMP, 1.0, 0.5, 0.0, 2.0)


def test_monotone_scan():
    assert monotone_witness(EXP_NEG, 0, 1, "decreasing") is None
    assert monotone_witness(IDENT, 0, 1, "increasing") is None
    lo, hi = monotone_witness(NEG_BUMP, 0, 1, "increasing")
    assert lo >= 0.5 and hi > lo
    with pytest.raises(MonotonicityError) as info:
        require_monotone(NEG_BUMP, 0, 1, "decreasing")
    assert info.value.witness[1] <= 0.5
    with pytest.raises(ParameterError):
        monotone_witness(IDENT, 0, 1, "sideways")


def test_certificate_record():
    rec = certify_quasi_convex(NEG_BUMP, 32).as_record()
    assert rec["label"] == ClassLabel.QUASI_CONVEX.value
    assert rec["witness"] == [0.0, 1.0, 0.5]
