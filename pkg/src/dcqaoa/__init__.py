"""Divide-and-conquer QAOA MaxCut solver with classical baselines."""

from .baselines import BaselineResult, greedy_local_search, random_search
from .errors import (
    ConnectivityExceededError,
    DcqaoaError,
    EdgeListParseError,
    GenerationError,
    GraphValidationError,
    PartitionProgressError,
    ReconstructionError,
    SizeLimitError,
)
from .graphs import (
    Graph,
    SolutionMap,
    approximation_ratio,
    best_sampled_cut,
    brute_force_maxcut,
    chain_maxcut,
    complement,
    cut_size,
    dfs_connected_components,
    expectation_value,
    load_graph,
    parse_edge_list,
    random_chain_graph,
    random_graph,
    save_graph,
    serialize_edge_list,
)
from .partition import SeparationResult, enumerate_paths, nlgp, nrl
from .qaoa import (
    AnsatzParams,
    apply_cost_layer,
    apply_mixer_layer,
    build_initial_state,
    cut_value_table,
    final_state,
    optimize_params,
    qaoa_expectation,
    qaoa_maxcut,
    sample_solution_map,
)
from .reconstruction import combine, kl_divergence, rerank_by_cut
from .solver import (
    DcConfig,
    PartitionNode,
    abridge,
    dc_qaoa,
    dc_qaoa_traced,
    rescale,
    tree_nrl,
    weight_map,
)

__all__ = [
    "AnsatzParams",
    "BaselineResult",
    "ConnectivityExceededError",
    "DcConfig",
    "DcqaoaError",
    "EdgeListParseError",
    "GenerationError",
    "Graph",
    "GraphValidationError",
    "PartitionNode",
    "PartitionProgressError",
    "ReconstructionError",
    "SeparationResult",
    "SizeLimitError",
    "SolutionMap",
    "abridge",
    "apply_cost_layer",
    "apply_mixer_layer",
    "approximation_ratio",
    "best_sampled_cut",
    "brute_force_maxcut",
    "chain_maxcut",
    "build_initial_state",
    "combine",
    "complement",
    "cut_size",
    "cut_value_table",
    "dc_qaoa",
    "dc_qaoa_traced",
    "dfs_connected_components",
    "enumerate_paths",
    "expectation_value",
    "final_state",
    "greedy_local_search",
    "kl_divergence",
    "load_graph",
    "nlgp",
    "nrl",
    "optimize_params",
    "parse_edge_list",
    "qaoa_expectation",
    "qaoa_maxcut",
    "random_chain_graph",
    "random_graph",
    "random_search",
    "rerank_by_cut",
    "rescale",
    "sample_solution_map",
    "save_graph",
    "serialize_edge_list",
    "tree_nrl",
    "weight_map",
]

__version__ = "0.1.0"
