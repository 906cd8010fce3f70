"""Exact invariants, toric equivalence and fillability of circular spherical divisors."""
from .classify import (
    AntiCanonicalVerdict,
    FillabilityVerdict,
    anticanonical_search,
    blown_up_check,
    classify_fillability,
    rigidity_report,
    strictly_semidefinite_report,
)
from .convexity import ConvexityVerdict, GsCertificate, gs_feasible, solve_area, trichotomy
from .divisor import (
    Divisor,
    MoveTrace,
    Step,
    balancing_move,
    canonical_form,
    charge,
    format_divisor,
    non_toric_blow_up,
    nonnegative_count,
    parse_divisor,
    self_intersection_square,
    smoothing,
    toric_blow_down,
    toric_blow_up,
    zero_pair_collapse,
)
from .equiv import EquivVerdict, SearchBudget, decide_equivalence, invariant_screen, toric_minimal_reduction
from .fillings import (
    CuspCycle,
    FillingHomology,
    GeographyReport,
    cap_invariants,
    dual_cusp,
    minimal_filling_homology,
    stein_geography,
)
from .lattice import (
    AbelianGroup,
    IntersectionMatrix,
    Signature,
    boundary_h1,
    divisor_signature,
    intersection_matrix,
    signature,
    smith_normal_form,
)
from .sl2z import (
    BundleClass,
    SL2Matrix,
    bundle_equal_oriented,
    bundle_type,
    conjugacy_canon,
    monodromy,
    negative_boundary_class,
    word_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "AntiCanonicalVerdict",
    "BundleClass",
    "ConvexityVerdict",
    "CuspCycle",
    "Divisor",
    "EquivVerdict",
    "FillabilityVerdict",
    "FillingHomology",
    "GeographyReport",
    "GsCertificate",
    "IntersectionMatrix",
    "MoveTrace",
    "SL2Matrix",
    "SearchBudget",
    "Signature",
    "Step",
    "anticanonical_search",
    "balancing_move",
    "blown_up_check",
    "boundary_h1",
    "bundle_equal_oriented",
    "bundle_type",
    "canonical_form",
    "cap_invariants",
    "charge",
    "classify_fillability",
    "conjugacy_canon",
    "decide_equivalence",
    "divisor_signature",
    "dual_cusp",
    "format_divisor",
    "gs_feasible",
    "intersection_matrix",
    "invariant_screen",
    "minimal_filling_homology",
    "monodromy",
    "negative_boundary_class",
    "non_toric_blow_up",
    "nonnegative_count",
    "parse_divisor",
    "rigidity_report",
    "self_intersection_square",
    "signature",
    "smith_normal_form",
    "smoothing",
    "solve_area",
    "stein_geography",
    "strictly_semidefinite_report",
    "toric_blow_down",
    "toric_blow_up",
    "toric_minimal_reduction",
    "trichotomy",
    "word_matrix",
    "zero_pair_collapse",
]
