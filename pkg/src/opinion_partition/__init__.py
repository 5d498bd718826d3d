"""Centrality-weighted opinion dynamics and disagreement-based network partitioning."""

from .centrality import (
    CentralityVector,
    centrality,
    custom_centrality,
    degree_centrality,
    eigenvector_centrality,
    uniform_centrality,
)
from .dynamics import (
    MarkovRun,
    OpinionState,
    OpinionTrajectory,
    ProbabilityState,
    agreement_limit,
    chain_period,
    disagreement_state,
    diversity_energy,
    entropy_diversity,
    inverse_simpson_diversity,
    markov_classify,
    markov_limit,
    markov_trajectory,
    projected_mode,
    solve_opinions,
)
from .graph import (
    Graph,
    builtin_dataset,
    complete_graph,
    connected_components,
    degree_vector,
    from_adjacency,
    induced_subgraph,
    is_connected,
    parse_edge_list,
    path_graph,
    star_graph,
)
from .partition import (
    PartitionResult,
    PartitionTree,
    bipartition,
    fiedler_baseline,
    iterative_partition,
    kmeans_partition,
    membership_strengths,
)
from .spectral import (
    InfluenceSystem,
    SpectralDecomposition,
    build_influence,
    eigendecompose,
    eigenvalue_groups,
    laplacian_of_graph,
    spectral_system,
)

__version__ = "0.1.0"
