"""Exact engine for intersections of deleted-digits Cantor sets with
their translates: case automaton, survivor counts, Hausdorff dimension
exponents, and measure bounds, all cross-validated against a brute-force
interval enumeration oracle.
"""

from .digits import (
    DeltaSet,
    DigitSet,
    NaryExpansion,
    Rational,
    alternate_representation,
    as_expansion,
    classify,
    digit_at,
    expansion_from_rational,
    format_expansion,
    make_digit_set,
    parse_expansion,
    parse_translation,
    rational_from_expansion,
    truncate,
)
from .transition import (
    CaseState,
    DigitStream,
    FunctionStream,
    SigmaTrace,
    XiValue,
    branch_counts,
    sigma_sequence,
    sigma_step,
    survivor_factor,
    xi,
)
from .counting import (
    CountingProfile,
    CycleInfo,
    EditedPeriodicStream,
    HorizonEstimate,
    L_liminf,
    L_tilde,
    beta,
    cycle_analysis,
    ell,
    horizon_estimates,
    mu_profile,
    nu,
    quadratic_edit_stream,
)
from .exactvals import ExactLogValue, GrowthExponent, exact_min, rational_power_of
from .oracle import (
    DEFAULT_CAP,
    FiniteDecomposition,
    IntervalClassification,
    LevelSet,
    OracleCounts,
    b_count_sparse,
    build_level,
    classify_intervals,
    counts_of,
    finite_decomposition,
    intersect_exact,
    oracle_count_series,
    oracle_counts,
    refine,
)
from .measure import (
    CoverBound,
    DenseApproximant,
    FMembership,
    MeasureReport,
    Verdict,
    cover_upper_bound,
    dense_approximant,
    dimension,
    in_F,
    measure_bounds,
    measure_bounds_C,
    measure_bounds_finite_t,
    measure_bounds_stream,
    measure_report,
    nonsparse_report,
)
from .render import render_svg

__version__ = "0.1.0"
