"""Exact toolkit for the graph cleaning (brush number) problem.

The package is organized around four layers:

* :mod:`graphclean.graphs` -- immutable graphs, product labelings and the
  edge-list file format,
* :mod:`graphclean.cleaning` -- brush configurations, cleaning sequences,
  orientations, simulation and the greedy cleanability test,
* :mod:`graphclean.solver` -- exact minimization (subset DP, branch and
  bound, permutation brute force) plus the sandwich check for small
  product instances,
* :mod:`graphclean.constructions` -- closed-form optimal configurations
  for structured families and the two reductions between them.
"""

from .cleaning import (
    BrushConfig,
    CleaningSequence,
    CleaningStep,
    CleaningTrace,
    Orientation,
    brush_cost,
    can_clean,
    minimal_config_for_sequence,
    orientation_from_sequence,
    parse_brush_config,
    parse_sequence,
    serialize_brush_config,
    serialize_sequence,
    simulate,
    verify_acyclic,
)
from .constructions import (
    BoundaryClassCounts,
    CorrectRows,
    TorusReduction,
    classify_boundary_pairs,
    clique_config,
    clique_sequence,
    combine_torus_rows,
    cycle_config,
    cycle_sequence,
    delete_clique_layer,
    find_correct_rows,
    km_pn_brush_number,
    km_pn_config,
    km_pn_config_odd,
    km_pn_sequence,
    path_config,
    path_sequence,
    reduce_torus,
    torus_brush_number,
    torus_config,
    torus_sequence,
)
from .errors import (
    GraphCleanError,
    InfeasibleStepError,
    InternalInconsistencyError,
    InvalidClassificationError,
    InvalidInputError,
    InvalidOrientationError,
    InvalidParameterError,
    InvalidSequenceError,
    ParseError,
    PreconditionViolationError,
    ResourceLimitError,
    TooLargeError,
)
from .graphs import (
    Graph,
    ProductLabeling,
    cartesian_product,
    graph_from_edges,
    is_connected,
    make_clique,
    make_cycle,
    make_path,
    parse_edge_list,
    serialize_edge_list,
)
from .solver import (
    BoxConjectureReport,
    SolveResult,
    brush_number_bnb,
    brush_number_dp,
    brute_force_permutations,
    check_box_conjecture,
    parity_lower_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryClassCounts",
    "BoxConjectureReport",
    "BrushConfig",
    "CleaningSequence",
    "CleaningStep",
    "CleaningTrace",
    "CorrectRows",
    "Graph",
    "GraphCleanError",
    "InfeasibleStepError",
    "InternalInconsistencyError",
    "InvalidClassificationError",
    "InvalidInputError",
    "InvalidOrientationError",
    "InvalidParameterError",
    "InvalidSequenceError",
    "Orientation",
    "ParseError",
    "PreconditionViolationError",
    "ProductLabeling",
    "ResourceLimitError",
    "SolveResult",
    "TooLargeError",
    "TorusReduction",
    "brush_cost",
    "brush_number_bnb",
    "brush_number_dp",
    "brute_force_permutations",
    "can_clean",
    "cartesian_product",
    "check_box_conjecture",
    "classify_boundary_pairs",
    "clique_config",
    "clique_sequence",
    "combine_torus_rows",
    "cycle_config",
    "cycle_sequence",
    "delete_clique_layer",
    "find_correct_rows",
    "graph_from_edges",
    "is_connected",
    "km_pn_brush_number",
    "km_pn_config",
    "km_pn_config_odd",
    "km_pn_sequence",
    "make_clique",
    "make_cycle",
    "make_path",
    "minimal_config_for_sequence",
    "orientation_from_sequence",
    "parity_lower_bound",
    "parse_brush_config",
    "parse_edge_list",
    "parse_sequence",
    "path_config",
    "path_sequence",
    "reduce_torus",
    "serialize_brush_config",
    "serialize_edge_list",
    "serialize_sequence",
    "simulate",
    "torus_brush_number",
    "torus_config",
    "torus_sequence",
    "verify_acyclic",
]
