"""Domain services."""

from .changepoint import local_jump, scan_changepoint
from .claims_engine import ClaimsPolicy, evaluate_all
from .dichotomy import calibrate_linear, calibrate_linear_to_means, dichotomize_and_test
from .forensics import ForensicsPolicy, audit, equal_variance_sensitivity
from .generators import generate
from .power import power_comparison
from .regression import (
    fit_divergence,
    fit_polynomial,
    fraction_from_counts,
    fraction_to_ratio,
    inflection_point,
    is_extrapolation,
    predict,
    ratio_to_fraction,
    sample_curve,
)
from .special_functions import (
    normal_cdf,
    normal_sf,
    regularized_incomplete_beta,
    rounds_down_to_alpha,
    student_t_sf,
    student_t_sf_two_tailed,
)
from .two_sample import (
    pooled_sd_from_t,
    support_lower_bound,
    tail_fraction_above,
    two_sample_t,
)

__all__ = [
    "ClaimsPolicy",
    "ForensicsPolicy",
    "audit",
    "calibrate_linear",
    "calibrate_linear_to_means",
    "dichotomize_and_test",
    "equal_variance_sensitivity",
    "evaluate_all",
    "fit_divergence",
    "fit_polynomial",
    "fraction_from_counts",
    "fraction_to_ratio",
    "generate",
    "inflection_point",
    "is_extrapolation",
    "local_jump",
    "normal_cdf",
    "normal_sf",
    "pooled_sd_from_t",
    "power_comparison",
    "predict",
    "ratio_to_fraction",
    "regularized_incomplete_beta",
    "rounds_down_to_alpha",
    "sample_curve",
    "scan_changepoint",
    "student_t_sf",
    "student_t_sf_two_tailed",
    "support_lower_bound",
    "tail_fraction_above",
    "two_sample_t",
]
