"""Parallelized greedy submodular maximization over information graphs.

Exact-rational library covering: objective functions with axiom and
curvature checks, iteration assignments and optimal graph constructions,
exact graph invariants, greedy execution with controllable tie resolution,
adversarial witness generators, and a certification harness comparing
theoretical bounds with enumerated ground truth.
"""

from .adversarial import (
    WitnessInstance,
    curvature_witness,
    p_additive_witness,
    sequential_half_witness,
)
from .bounds import (
    BoundsReport,
    ChainCheck,
    CertifyRow,
    RatioBounds,
    SuiteEntry,
    certify,
    chain_bound_check,
    curvature_eta_bounds,
    curvature_graph_bounds,
    graph_ratio_bounds,
    min_edges_bound,
    rho,
)
from .errors import CapacityError, InputError, PargreedyError, UndefinedRatioError
from .graphmetrics import (
    DisjointSetsCheck,
    InvariantWitness,
    PSiblingWitness,
    SiblingWitness,
    clique_cover_number,
    clique_number,
    has_p_sibling,
    has_sibling_condition,
    independence_number,
    maximum_independent_sets,
    maximum_pseudo_independent_sets,
    pseudo_independence_number,
    verify_no_disjoint_max_sets,
)
from .greedy import (
    GreedyOutcome,
    brute_force_optimum,
    empirical_ratio,
    run_greedy,
    run_parallel_greedy,
)
from .objective import (
    AgentSpace,
    PropertyReport,
    PropertyViolation,
    SetFunction,
    as_fraction,
    check_partition,
    check_properties,
    total_curvature,
)
from .structure import (
    AssignmentViolation,
    InformationGraph,
    IterationAssignment,
    Schedule,
    complement_turan_graph,
    earliest_schedule,
    induced_graph,
    is_feasible,
    normalize_assignment,
    optimal_assignment,
    optimal_graph,
    turan_graph,
    validate_assignment,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
