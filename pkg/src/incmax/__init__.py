"""Incremental maximization under a growing cardinality budget.

Objectives are pure set functions over an indexed ground set; solutions are
orders in which elements are added one at a time. The package provides
exhaustive optimum oracles, the phase algorithm with its 1+phi guarantee,
the greedy algorithm with its augmentability analysis, adversarial instance
families, property checkers, and a batch CLI.
"""

from .algorithms import (
    GOLDEN_RATIO,
    PHASE_BOUND,
    GreedyTrace,
    PhaseSchedule,
    floor_phi_times,
    greedy,
    greedy_bound,
    next_phase_cardinality,
    phase_algorithm,
    phase_algorithm_with_oracle,
    phase_schedule,
)
from .core import (
    DEFAULT_ENUMERATION_BUDGET,
    AccountabilityError,
    CompetitivenessReport,
    GroundSet,
    IncrementalInstance,
    IncrementalOrder,
    OptimumTable,
    PropertyReport,
    ResourceError,
    brute_force_optimum,
    check_accountable,
    check_alpha_augmentable,
    check_monotone,
    check_subadditive,
    check_submodular,
    competitive_ratio,
    density,
    evaluate,
    greedy_order,
    optimum_table,
)
from .numeric import INFINITE, Value
from .objectives import (
    BridgeFlowInstance,
    KnapsackInstance,
    PathDemand,
    PathSystem,
    RegionSpec,
    SetSystem,
    TableInstanceData,
    WeightedGraph,
    bridge_flow_objective,
    coverage_objective,
    disjoint_paths_objective,
    knapsack_objective,
    matching_objective,
    max_flow,
    region_choosing_objective,
    region_optimum,
    region_optimum_table,
    set_packing_objective,
    table_objective,
)

__all__ = [name for name in dir() if not name.startswith("_")]
