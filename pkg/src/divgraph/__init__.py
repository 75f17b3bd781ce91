"""Cycles and subdivisions of length divisible by q, built constructively
from explicit complete-minor certificates, with independently checkable
witnesses for every output."""

from .errors import (
    AttemptsExhausted,
    BudgetExceeded,
    DivgraphError,
    InputError,
    InternalInvariantError,
    SearchFailure,
    StageFailure,
)
from .generators import (
    GenSpec,
    complete_graph,
    enumerate_digraphs,
    gen_digraph,
    gen_favorable_subdivision_instance,
    gen_minor_model,
    gen_tree,
    generate,
)
from .minorcycle import (
    SupernodePairing,
    build_auxiliary_digraph,
    find_divisible_cycle,
    lift_cycle,
    pair_supernodes,
    required_branch_sets,
)
from .model import (
    CompleteWeightedDigraph,
    CycleWitness,
    LabeledTree,
    MinorModel,
    PatternGraph,
    Residue,
    SubdivisionWitness,
    ValidationReport,
    WeightedGraph,
    cycle_witness_report,
    identity_minor_model,
    model_from_branch_sets,
    path_weight,
    residue_add,
    residue_neg,
    subdivide_pattern,
    subdivision_witness_report,
    validate_minor_model,
    verify_cycle_witness,
    verify_subdivision_witness,
)
from .subdivision import (
    RoutedEdge,
    SplitInstance,
    XSelection,
    assemble_subdivision,
    build_divisible_subdivision,
    common_residue_filter,
    edge_path_residue,
    find_monochromatic_subdivision,
    route_edges,
    select_all,
    split_and_weight,
)
from .treeselect import (
    HIGH_DEGREE,
    LONG_PATH,
    LeafSelection,
    SelectionFailure,
    certificate_for_triple,
    f1_bound,
    select_leaves,
    steiner_trim,
    verify_selection,
    verify_selection_report,
)
from .zerosum import (
    Labeling,
    PathFamily,
    brute_force_zero_cycle,
    default_max_attempts,
    find_zero_cycle_prime,
    find_zero_cycle_randomized,
    grow_path_family,
    is_prime,
    labeling_attempt,
    sumset_extend,
)

__version__ = "0.1.0"
