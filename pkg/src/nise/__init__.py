"""Overlapping community detection by seed expansion on the biconnected core.

The pipeline has four phases: filtering (biconnected core extraction),
seeding, personalized-PageRank seed expansion with conductance sweep cuts,
and propagation of core communities into the detached whiskers.
"""

from .graph import (
    Graph,
    from_edges,
    load_edge_list,
    largest_connected_component,
    induced_subgraph,
    links,
    cut,
    ncut,
    conductance,
    graph_stats,
    degree_histogram,
)
from .filtering import CoreDecomposition, biconnected_components, decompose
from .partition import (
    Partition,
    kernel_distance,
    refine_weighted_kernel_kmeans,
    coarsen,
    hierarchical_partition,
)
from .seeding import (
    SeedSet,
    seeds_graclus_centers,
    seeds_spread_hubs,
    seeds_locally_minimal,
    seeds_random,
)
from .expansion import (
    PprParams,
    Community,
    restart_set,
    ppr_push,
    sweep_cut,
    expand_seed,
    expand_all,
)
from .propagation import propagate, certify_propagation
from .evaluation import (
    coverage,
    conductance_coverage_auc,
    f_beta_report,
    size_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "from_edges",
    "load_edge_list",
    "largest_connected_component",
    "induced_subgraph",
    "links",
    "cut",
    "ncut",
    "conductance",
    "graph_stats",
    "degree_histogram",
    "CoreDecomposition",
    "biconnected_components",
    "decompose",
    "Partition",
    "kernel_distance",
    "refine_weighted_kernel_kmeans",
    "coarsen",
    "hierarchical_partition",
    "SeedSet",
    "seeds_graclus_centers",
    "seeds_spread_hubs",
    "seeds_locally_minimal",
    "seeds_random",
    "PprParams",
    "Community",
    "restart_set",
    "ppr_push",
    "sweep_cut",
    "expand_seed",
    "expand_all",
    "propagate",
    "certify_propagation",
    "coverage",
    "conductance_coverage_auc",
    "f_beta_report",
    "size_distribution",
    "__version__",
]
