"""Winding numbers and point containment for rational Bezier boundaries,
including uni- and bi-periodic parameter domains."""
from .errors import *  # noqa: F401,F403
from .geometry import (
    Counters,
    CurveSpan,
    EllipseBound,
    Point2,
    RationalBezierSegment,
    decompose_bspline,
    derivative_bound,
    elevate_degree,
    ellipse_bound,
    ellipse_contains,
    evaluate,
    split_segment,
)
from .winding import (
    DEFAULT_EPS,
    BezierPath,
    WindingKind,
    WindingOutcome,
    compute_winding,
    control_polygon_winding_baseline,
    crossing_count,
    path_winding,
    polyline_winding_oracle,
    segment_winding,
)
from .batch import winding_many
from .periodic import (
    BI_PERIODIC,
    NON_PERIODIC,
    UNI_PERIODIC,
    DomainTopology,
    ExtendedCurve,
    HomologyClass,
    LoopSet,
    TopologyKind,
    bi_contractible_winding,
    bi_periodic_winding,
    extended_winding,
    homology_class,
    line_winding,
    pair_loop,
    pair_loops,
    to_left,
    uni_contractible_winding,
    uni_periodic_winding,
    validate_loops,
)
from .containment import Classification, Rule, TrimmedRegion, Verdict, classify, classify_batch

__version__ = "0.1.0"
