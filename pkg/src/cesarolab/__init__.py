"""Numerical laboratory for a Volterra-type integral operator on the unit ball.

The package evaluates weighted-gradient integral norms and radial-derivative
supremum norms of holomorphic functions on the complex unit ball, applies the
integral operator with symbol g both through Taylor coefficients and through
quadrature, and scans the boundary statistics that govern boundedness and
compactness of that operator between the two scales of spaces.
"""

from .ball import DEFAULT_RADIAL_GRID, SamplingScheme, green, inner, mobius, norm, sample_sphere, unit_directions
from .cesaro import (
    ResidualReport,
    apply_coefficient_route,
    apply_quadrature_route,
    verify_radial_identity,
)
from .criteria import (
    TREND_BOUNDED,
    TREND_DIVERGING,
    TREND_INCONCLUSIVE,
    TREND_POLICY,
    TREND_VANISHING,
    CheckReport,
    CriterionReport,
    ProbeReport,
    boundary_family,
    check_embedding_bound,
    check_growth_bound,
    classify_trend,
    compactness_probe,
    compactness_scan,
    criterion_statistic,
    empirical_operator_ratio,
    log_kernel_ratio,
    log_test_function,
    power_test_function,
    sup_decay_scan,
)
from .errors import (
    AccuracyFailure,
    DimensionMismatch,
    DomainError,
    EvaluationFailure,
    InvalidParameter,
    SingularInput,
)
from .quadrature import (
    BallIntegralSpec,
    IntegralResult,
    ball_integral,
    monomial_ball_integral,
    path_integral_unit,
    zonal_ball_integral,
)
from .reports import make_table, report_document, write_report
from .series import TruncatedSeries, random_series
from .spaces import (
    AnalyticFunction,
    BesovNormInfo,
    SpaceParams,
    SupremumScan,
    besov_norm,
    besov_norm_info,
    bloch_norm,
    bloch_seminorm,
    gp_weight,
    gp_weight_at_radius,
    growth_bound_constant,
    radial_derivative_values,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyFailure",
    "AnalyticFunction",
    "BallIntegralSpec",
    "BesovNormInfo",
    "CheckReport",
    "CriterionReport",
    "DEFAULT_RADIAL_GRID",
    "DimensionMismatch",
    "DomainError",
    "EvaluationFailure",
    "IntegralResult",
    "InvalidParameter",
    "ProbeReport",
    "ResidualReport",
    "SamplingScheme",
    "SingularInput",
    "SpaceParams",
    "SupremumScan",
    "TREND_BOUNDED",
    "TREND_DIVERGING",
    "TREND_INCONCLUSIVE",
    "TREND_POLICY",
    "TREND_VANISHING",
    "TruncatedSeries",
    "apply_coefficient_route",
    "apply_quadrature_route",
    "ball_integral",
    "besov_norm",
    "besov_norm_info",
    "bloch_norm",
    "bloch_seminorm",
    "boundary_family",
    "check_embedding_bound",
    "check_growth_bound",
    "classify_trend",
    "compactness_probe",
    "compactness_scan",
    "criterion_statistic",
    "empirical_operator_ratio",
    "gp_weight",
    "gp_weight_at_radius",
    "green",
    "growth_bound_constant",
    "inner",
    "log_kernel_ratio",
    "log_test_function",
    "make_table",
    "mobius",
    "monomial_ball_integral",
    "norm",
    "path_integral_unit",
    "power_test_function",
    "radial_derivative_values",
    "random_series",
    "report_document",
    "sample_sphere",
    "sup_decay_scan",
    "unit_directions",
    "verify_radial_identity",
    "write_report",
    "zonal_ball_integral",
]
