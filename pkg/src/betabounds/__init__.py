"""Numerical verification of Beta-function bounds for weighted integrals
``int_a^b (x-a)^p (b-x)^q f(x) dx`` of (alpha, m)-convex and quasi-convex f.
"""

from .errors import (BetaBoundsError, DomainError, EvaluationPointError, HypothesisError,
                     MonotonicityError, ParameterError, ToleranceNotMetError)
from .function_model import (ClassLabel, ClassParams, Claim, ExponentParam, FunctionSpec,
                             builtin_catalog, evaluate, get_spec, power_transform)
from .quadrature import (QuadratureResult, WeightParams, lemma_identity_residual,
                         unit_form_integral, weighted_integral)
from .special_functions import beta, beta_by_quadrature, log_beta, log_gamma
from .certifier import (Certificate, certify_alpha_m_convex, certify_convex, certify_m_convex,
                        certify_quasi_convex)
from .bounds import (BoundValue, bound_monotone_quasi, bound_thm14, bound_thm15, bound_thm21,
                     bound_thm22, bound_thm23, bound_thm31, bound_thm32)
from .harness import (BoundReport, ParamGrid, reduction_audit, sweep, tightness_search,
                      verify_case)

__version__ = "0.1.0"
