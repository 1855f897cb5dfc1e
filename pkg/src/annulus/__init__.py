"""Construct, color, and analyze annulus graphs.

An annulus graph is a geometric graph on points of R^d whose edges are
exactly the pairs at Euclidean distance inside a closed interval [r1, r2]
(r1 = 0 gives unit disc graphs). The package provides instance generators,
a sweep-hyperplane batch coloring whose color count is bounded by a
constructive covering argument, exact small-instance solvers for clique,
chromatic and independence numbers, closed-form bound evaluation, and
penalty-based embedding feasibility probes.
"""

from .bounds import (
    ANALYSIS_DOMAIN,
    BoundReport,
    analysis_function,
    analysis_grid,
    analysis_grid_max,
    clique_volume_bound,
    kl_exponent,
    ratio_exponent,
    sweep_chi_bound,
)
from .generators import (
    gen_cycle_1d,
    gen_easy_lemma_instance,
    gen_lattice,
    gen_sphere_net,
    net_covering_misses,
    random_points_instance,
    sphere_surface_area,
)
from .geometry import (
    CoveringWitness,
    PackingWitness,
    SphericalCode,
    cap_fraction,
    covering_number_witness,
    dist,
    greedy_ball_packing,
    greedy_spherical_code,
    log_cap_fraction,
    n_gamma_witness,
    spherical_distance,
)
from .graphs import (
    AdjacencyGraph,
    AnnulusInstance,
    CliqueResult,
    ColoringResult,
    IndepResult,
    build_graph,
    chromatic_number,
    is_proper,
    max_clique,
    max_independent_set,
)
from .probe import (
    AnnulusEmbedder,
    EmbedProblem,
    EmbedResult,
    PairConstraint,
    embed_search,
    embedding_round_trip,
    forbidden_config_residual,
    graph_constraints,
    max_violation,
    penalty_value_grad,
)
from .sweep import SweepColorer, SweepColoring, colors_in_ball, sweep_color, verify_token_invariants
from .validation import BoundaryAmbiguityError, BudgetExceededError

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AnnulusInstance",
    "AdjacencyGraph",
    "build_graph",
    "max_clique",
    "chromatic_number",
    "max_independent_set",
    "is_proper",
    "CliqueResult",
    "ColoringResult",
    "IndepResult",
    "SweepColoring",
    "sweep_color",
    "verify_token_invariants",
    "colors_in_ball",
    "SweepColorer",
    "gen_lattice",
    "gen_cycle_1d",
    "gen_sphere_net",
    "gen_easy_lemma_instance",
    "random_points_instance",
    "net_covering_misses",
    "sphere_surface_area",
    "dist",
    "spherical_distance",
    "cap_fraction",
    "log_cap_fraction",
    "greedy_ball_packing",
    "covering_number_witness",
    "n_gamma_witness",
    "greedy_spherical_code",
    "PackingWitness",
    "CoveringWitness",
    "SphericalCode",
    "BoundReport",
    "kl_exponent",
    "analysis_function",
    "analysis_grid",
    "analysis_grid_max",
    "ANALYSIS_DOMAIN",
    "sweep_chi_bound",
    "ratio_exponent",
    "clique_volume_bound",
    "EmbedProblem",
    "EmbedResult",
    "PairConstraint",
    "embed_search",
    "forbidden_config_residual",
    "embedding_round_trip",
    "graph_constraints",
    "penalty_value_grad",
    "max_violation",
    "AnnulusEmbedder",
    "BudgetExceededError",
    "BoundaryAmbiguityError",
]
