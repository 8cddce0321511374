"""Exact verification and exploration toolkit for perfect codes and packings
of Z^n under the symmetric limited-magnitude error model."""

from .bounds import (
    ClassificationReport,
    CriterionOutcome,
    DensityBound,
    TableRow,
    bound_asymptotic,
    bound_large_s,
    bound_lattice_cases,
    bound_prereq,
    bound_small_s,
    classify,
    classify_grid,
    density_bound_asymptotic,
    packing_density_bound,
    table_row,
)
from .core import (
    BallParams,
    IntVector,
    PairWeightMatrix,
    ball_volume,
    enumerate_ball,
    iter_ball_coords,
    pair_weight_matrix,
    volume_ratio_bound,
)
from .errors import (
    BoundaryUncertainError,
    CapExceededError,
    DimensionMismatchError,
    HypothesesUnmetError,
    InvalidParameterError,
    LmlabError,
    PreconditionViolatedError,
    SingularMatrixError,
    TooFewCodewordsError,
)
from .lattice import (
    BUNDLED_TILINGS,
    Lattice,
    QuotientMap,
    VerificationResult,
    lattice_density,
    lattice_determinant,
    smith_normal_form,
    verify_lattice_packing,
    verify_lattice_tiling,
)
from .metric import (
    Code,
    channel_distance,
    difference_set_equivalence,
    is_e_correcting,
    min_distance,
)
from .qp import (
    SymbolDistribution,
    avg_distance_bound,
    continuous_oracle_search,
    distance_decomposition,
    form_envelope,
    form_max_closed,
    form_max_exhaustive_integer,
    form_max_oracle_binary,
    form_max_oracle_continuous,
    form_value,
    symbol_distributions,
)
from .search import (
    enumerate_sublattices,
    estimate_density,
    lattice_points_in_window,
    search_perfect_lattices,
    verify_window_packing,
)

__version__ = "0.1.0"

__all__ = [
    "BUNDLED_TILINGS",
    "BallParams",
    "BoundaryUncertainError",
    "CapExceededError",
    "ClassificationReport",
    "Code",
    "CriterionOutcome",
    "DensityBound",
    "DimensionMismatchError",
    "HypothesesUnmetError",
    "IntVector",
    "InvalidParameterError",
    "Lattice",
    "LmlabError",
    "PairWeightMatrix",
    "PreconditionViolatedError",
    "QuotientMap",
    "SingularMatrixError",
    "SymbolDistribution",
    "TableRow",
    "TooFewCodewordsError",
    "VerificationResult",
    "avg_distance_bound",
    "ball_volume",
    "bound_asymptotic",
    "bound_large_s",
    "bound_lattice_cases",
    "bound_prereq",
    "bound_small_s",
    "channel_distance",
    "classify",
    "classify_grid",
    "continuous_oracle_search",
    "density_bound_asymptotic",
    "difference_set_equivalence",
    "distance_decomposition",
    "enumerate_ball",
    "enumerate_sublattices",
    "estimate_density",
    "form_envelope",
    "form_max_closed",
    "form_max_exhaustive_integer",
    "form_max_oracle_binary",
    "form_max_oracle_continuous",
    "form_value",
    "is_e_correcting",
    "iter_ball_coords",
    "lattice_density",
    "lattice_determinant",
    "lattice_points_in_window",
    "min_distance",
    "packing_density_bound",
    "pair_weight_matrix",
    "search_perfect_lattices",
    "smith_normal_form",
    "symbol_distributions",
    "table_row",
    "verify_lattice_packing",
    "verify_lattice_tiling",
    "verify_window_packing",
    "volume_ratio_bound",
]
