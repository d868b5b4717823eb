"""Adaptive approximation of high-order Bezier curves by low-order segments."""

from .adaptive import (
    AdaptiveConfig,
    SegmentChain,
    adaptive_binary_search,
    adaptive_linear_search,
    approximate_over_partition,
    rule_of_thumb_partition,
    segment_distances,
)
from .curves import (
    BezierCurve,
    curve_from_json,
    curve_to_json,
    derivative,
    evaluate,
    evaluate_many,
    split_to_interval,
)
from .degree import (
    LeastSquares,
    Matching,
    Taylor,
    degree_one_matching_error,
    elevate,
    elevation_matrix,
    matching_reduction_matrix_monomial,
    reduce,
    reduction_matrix,
)
from .errors import (
    AllZeroCoefficients,
    CurveError,
    DegenerateInterval,
    DegenerateSegment,
    DegreeOrder,
    DegreeTooHigh,
    DegreeZero,
    DimensionMismatch,
    DuplicateParams,
    NotPlanar,
    ToleranceUnreachable,
    UnsupportedDegree,
    UnsupportedTargetDegree,
)
from .features import (
    FeatureReport,
    Halfspace,
    chain_features,
    quad_arc_length,
    quad_distance_to_point,
    quad_distance_to_segment,
    quad_halfspace_clip,
    quad_max_abs_curvature,
    solve_cubic,
)
from .metrics import distance, l2_weight, relative_bound_radius
from .polybasis import (
    BasisKind,
    BasisSpec,
    basis_matrix,
    basis_vector,
    convert_controls,
    reparametrize,
    transform_matrix,
)

__version__ = "0.1.0"
