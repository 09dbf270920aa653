"""cospread: multiplex contagion simulator and intervention-targeting toolkit."""

__version__ = "0.1.0"

from .capacity import (FULL, AudienceModel, audience_capacity,
                       branching_capacity, branching_oracle,
                       expected_yield_connected, select_broadcaster)
from .diffusion import SimParams, SimState, SimTrace, run_replicates, simulate
from .errors import CospreadError, DomainError, ParseError, ValidationError
from .generators import GeneratorSpec, generate
from .graph import (CentralityReport, Graph, betweenness, build_graph,
                    centrality_report, connected_components, core_numbers,
                    density, induced_subgraph, read_edge_list)
from .multiplex import (ContagionLabeling, FrontierReport, frontier,
                        viable_candidates)
from .profiles import (TransitionMatrix, UserProfile, group_centrality_report,
                       ideology_score, is_bot, source_entropy,
                       transition_matrix)
from .seeds import derive_seed
from .sweep import SweepRecord, correlations, run_sweep, spearman

__all__ = [
    "__version__",
    "FULL", "AudienceModel", "audience_capacity", "branching_capacity",
    "branching_oracle", "expected_yield_connected", "select_broadcaster",
    "SimParams", "SimState", "SimTrace", "run_replicates", "simulate",
    "CospreadError", "DomainError", "ParseError", "ValidationError",
    "GeneratorSpec", "generate",
    "CentralityReport", "Graph", "betweenness", "build_graph",
    "centrality_report", "connected_components", "core_numbers", "density",
    "induced_subgraph", "read_edge_list",
    "ContagionLabeling", "FrontierReport", "frontier", "viable_candidates",
    "TransitionMatrix", "UserProfile", "group_centrality_report",
    "ideology_score", "is_bot", "source_entropy", "transition_matrix",
    "derive_seed",
    "SweepRecord", "correlations", "run_sweep", "spearman",
]
