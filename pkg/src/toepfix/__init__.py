"""Bounded positive solutions of x = Tx for banded Toeplitz matrices.

The package decides, for a nonnegative banded Toeplitz matrix T, whether
the fixed-point system x = Tx has a bounded positive solution, computes
solution traces exactly or in floats, extracts limits and partial-sum
slopes, and cross-checks everything against generating-function closed
forms and random-walk oracles (dynamic programming and seeded Monte
Carlo).
"""

from .errors import (
    ArithmeticOverflow,
    BoundaryNotResolved,
    ConditioningEventTooRare,
    ConvexityNotVerified,
    DriftNotNegative,
    EmptyCoefficients,
    IndeterminateMass,
    InvalidDistribution,
    MeanAtLeastOne,
    MixedValueKinds,
    ModeMismatch,
    MomentNotSubunit,
    MuSupportExceedsN,
    NegativeCoefficient,
    NonpositiveSeed,
    NotCritical,
    OutOfDomain,
    PoleAtZ,
    PoleDetected,
    ScaleNotAboveOne,
    ToepfixError,
    ToleranceTooSmall,
    TraceTooShort,
    UnboundedTailNotBoundable,
    WrongBandDepth,
    ZeroLeadingCoefficient,
    ZeroLeadingStep,
    ZeroT0,
)
from .kernel import (
    CONVEXITY_FAIL,
    CONVEXITY_INDETERMINATE,
    CONVEXITY_PASS,
    ConvexityReport,
    ToeplitzKernel,
    check_convexity,
    first_moment,
    kernel_from_json,
    kernel_to_json,
    make_kernel,
    mass,
    tau_eval,
)
from .recurrence import (
    DEFAULT_BIT_LIMIT,
    PositivityReport,
    Prefix,
    SolutionTrace,
    TailSummary,
    make_prefix,
    positivity_scan,
    read_trace_csv,
    scaled_kernel,
    solve_forward,
    solve_tail,
    uniform_prefix,
    write_trace_csv,
)
from .classify import (
    BOUNDED_REGIMES,
    CRITICAL_BOUNDED,
    CRITICAL_DIVERGENT_EQUAL,
    CRITICAL_DIVERGENT_HEAVY,
    SUBCRITICAL,
    SUPERCRITICAL,
    RegimeReport,
    RootReport,
    classify,
    find_root_in_unit_interval,
    limit_value_n1,
    pole_in_unit_interval,
    regime_report_to_json,
    root_report_to_json,
)
from .genfun import (
    ConsistencyReport,
    chi_closed_form,
    chi_series_check,
    consistency_report_to_json,
)
from .asymptotics import (
    DEFAULT_EPSILONS,
    SlopeEstimate,
    abel_limit,
    cesaro_slope,
    predicted_slope,
    slope_estimate_to_json,
)
from .stochastic import (
    DiscreteDist,
    WalkEstimate,
    dist_from_json,
    dist_to_json,
    make_dist,
    simulate_sup_single,
    simulate_sup_two,
    step_dist,
    step_kernel,
    takacs_dp,
    takacs_gf,
    two_seq_dp,
    walk_estimate_to_json,
)
from .backends import get_backend, set_worker_count

__version__ = "0.1.0"

__all__ = [
    "ArithmeticOverflow",
    "BoundaryNotResolved",
    "ConditioningEventTooRare",
    "ConvexityNotVerified",
    "DriftNotNegative",
    "EmptyCoefficients",
    "IndeterminateMass",
    "InvalidDistribution",
    "MeanAtLeastOne",
    "MixedValueKinds",
    "ModeMismatch",
    "MomentNotSubunit",
    "MuSupportExceedsN",
    "NegativeCoefficient",
    "NonpositiveSeed",
    "NotCritical",
    "OutOfDomain",
    "PoleAtZ",
    "PoleDetected",
    "ScaleNotAboveOne",
    "ToepfixError",
    "ToleranceTooSmall",
    "TraceTooShort",
    "UnboundedTailNotBoundable",
    "WrongBandDepth",
    "ZeroLeadingCoefficient",
    "ZeroLeadingStep",
    "ZeroT0",
    "CONVEXITY_FAIL",
    "CONVEXITY_INDETERMINATE",
    "CONVEXITY_PASS",
    "ConvexityReport",
    "ToeplitzKernel",
    "check_convexity",
    "first_moment",
    "kernel_from_json",
    "kernel_to_json",
    "make_kernel",
    "mass",
    "tau_eval",
    "DEFAULT_BIT_LIMIT",
    "PositivityReport",
    "Prefix",
    "SolutionTrace",
    "TailSummary",
    "make_prefix",
    "positivity_scan",
    "read_trace_csv",
    "scaled_kernel",
    "solve_forward",
    "solve_tail",
    "uniform_prefix",
    "write_trace_csv",
    "BOUNDED_REGIMES",
    "CRITICAL_BOUNDED",
    "CRITICAL_DIVERGENT_EQUAL",
    "CRITICAL_DIVERGENT_HEAVY",
    "SUBCRITICAL",
    "SUPERCRITICAL",
    "RegimeReport",
    "RootReport",
    "classify",
    "find_root_in_unit_interval",
    "limit_value_n1",
    "pole_in_unit_interval",
    "regime_report_to_json",
    "root_report_to_json",
    "ConsistencyReport",
    "chi_closed_form",
    "chi_series_check",
    "consistency_report_to_json",
    "SlopeEstimate",
    "abel_limit",
    "cesaro_slope",
    "slope_estimate_to_json",
    "DEFAULT_EPSILONS",
    "predicted_slope",
    "DiscreteDist",
    "WalkEstimate",
    "dist_from_json",
    "dist_to_json",
    "make_dist",
    "simulate_sup_single",
    "simulate_sup_two",
    "step_dist",
    "step_kernel",
    "takacs_dp",
    "takacs_gf",
    "two_seq_dp",
    "walk_estimate_to_json",
    "get_backend",
    "set_worker_count",
    "__version__",
]
