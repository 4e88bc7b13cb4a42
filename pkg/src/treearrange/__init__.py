"""Arrangement of tree-structured data on the leaves of regular trees.

Core pieces: a recursive solver for complete binary guests with exact
closed forms, optimal balanced partitions that yield a matching lower
bound, exhaustive oracles for desk-scale certification, star-graph optima
and a hardness-reduction gadget generator.
"""

from .approx import (
    PairExchange,
    approx_arrangement,
    approx_arrangement_with_trace,
    closed_form_coefficients,
    closed_form_objective,
    pair_exchange_count,
    pair_exchange_delta,
    undo_exchange,
)
from .arrangement import (
    Arrangement,
    DistanceProfile,
    GuestTree,
    arrangement_from_json,
    arrangement_to_json,
    distance_profile,
    objective_value,
    validate,
)
from .bounds import (
    LowerBoundTable,
    RatioCertificate,
    approximation_ratio,
    dapt_lower_bound,
    lower_bound_table,
    ratio_certificate,
)
from .errors import (
    BudgetExceededError,
    InvalidArrangementError,
    InvalidInputError,
    TreeArrangeError,
)
from .gadgets import (
    NmtsInstance,
    ReductionOutput,
    build_reduction,
    star_optimum,
    three_star_optimum,
    witness_arrangement,
)
from .oracle import exact_dapt, exact_kbpp
from .partition import (
    BalancedPartition,
    BoundCase,
    ConstructionParams,
    component_count_profile,
    construct_optimal,
    construction_params,
    cut_count,
    lower_bound_cases,
    n1_of_construction,
    optimal_value,
)
from .regular_tree import (
    HostTree,
    VertexAddress,
    derived_sizes,
    leaf_distance,
    leaves_under,
    most_recent_common_ancestor_level,
)

__all__ = [
    "Arrangement",
    "BalancedPartition",
    "BoundCase",
    "BudgetExceededError",
    "ConstructionParams",
    "DistanceProfile",
    "GuestTree",
    "HostTree",
    "InvalidArrangementError",
    "InvalidInputError",
    "LowerBoundTable",
    "NmtsInstance",
    "PairExchange",
    "RatioCertificate",
    "ReductionOutput",
    "TreeArrangeError",
    "VertexAddress",
    "approx_arrangement",
    "approx_arrangement_with_trace",
    "approximation_ratio",
    "arrangement_from_json",
    "arrangement_to_json",
    "build_reduction",
    "closed_form_coefficients",
    "closed_form_objective",
    "component_count_profile",
    "construct_optimal",
    "construction_params",
    "cut_count",
    "dapt_lower_bound",
    "derived_sizes",
    "distance_profile",
    "exact_dapt",
    "exact_kbpp",
    "leaf_distance",
    "leaves_under",
    "lower_bound_cases",
    "lower_bound_table",
    "most_recent_common_ancestor_level",
    "n1_of_construction",
    "objective_value",
    "optimal_value",
    "pair_exchange_count",
    "pair_exchange_delta",
    "ratio_certificate",
    "star_optimum",
    "three_star_optimum",
    "undo_exchange",
    "validate",
    "witness_arrangement",
]
