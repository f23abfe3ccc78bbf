"""Run-report assembly and serialization for the benchmark front end."""

from __future__ import annotations

import json

from .baselines import greedy_local_search
from .graphs import (
    BRUTE_FORCE_LIMIT,
    Graph,
    SolutionMap,
    approximation_ratio,
    best_sampled_cut,
    brute_force_maxcut,
    expectation_value,
)
from .seeds import derive_seed
from .solver import DcConfig, PartitionNode, tree_nrl

RUN_REPORT_SCHEMA = "dcqaoa.run_report.v1"
REFERENCE_RESTARTS = 20


def reference_optimum(
    g: Graph, candidate_cuts: list[int], seed: int
) -> tuple[int, str]:
    """Denominator for approximation ratios.

    Exact brute force when the graph is small enough; otherwise the best
    cut found by any method in play plus a long local search, flagged as a
    lower-bound-relative reference.
    """
    if g.n <= BRUTE_FORCE_LIMIT:
        max_cut, _ = brute_force_maxcut(g)
        return max_cut, "brute_force"
    local = greedy_local_search(
        g, seed=derive_seed(seed, "reference"), restarts=REFERENCE_RESTARTS
    )
    return max([local.best_cut, *candidate_cuts]), "best_of_suite"


def build_run_report(
    g: Graph,
    cfg: DcConfig,
    solution: SolutionMap,
    tree: PartitionNode,
    runtime_seconds: float | None,
    graph_path: str | None = None,
    kl: float | None = None,
) -> dict:
    best_cut = best_sampled_cut(g, solution)
    max_cut, reference_kind = reference_optimum(g, [best_cut], cfg.seed)
    report = {
        "schema": RUN_REPORT_SCHEMA,
        "config": {
            "p": cfg.p,
            "t": cfg.t,
            "s": cfg.s,
            "k": cfg.k,
            "scheme": cfg.scheme,
            "seed": cfg.seed,
            "budget": cfg.budget,
            "restarts": cfg.restarts,
        },
        "graph": {
            "hash": g.digest(),
            "nodes": g.n,
            "edges": g.m,
            "path": graph_path,
        },
        "reference": {"kind": reference_kind, "max_cut": max_cut},
        "metrics": {
            "expectation_value": expectation_value(g, solution),
            "approximation_ratio_expectation": approximation_ratio(
                g, solution, "expectation", max_cut=max_cut
            ),
            "approximation_ratio_best_sampled": approximation_ratio(
                g, solution, "best_sampled", max_cut=max_cut
            ),
            "best_sampled_cut": best_cut,
            "nrl": tree_nrl(g, tree),
            "kl_divergence": kl,
            "runtime_seconds": runtime_seconds,
        },
        "solution": solution.to_dict(),
        "partition_tree": tree.to_dict(),
    }
    return report


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
