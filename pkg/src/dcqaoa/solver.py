"""Recursive divide-and-conquer MaxCut driver.

Graphs larger than the qubit budget are split by the separator-path
heuristic; each side is solved recursively and the two sampling
distributions are merged under the combination criterion. At every level
the map is re-ranked by true cut size, truncated to the top-t entries, and
rescaled to a fixed total count.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ReconstructionError
from .graphs import Graph, SolutionMap
from .partition import nlgp, nrl
from .qaoa import DEFAULT_BUDGET, DEFAULT_RESTARTS, qaoa_maxcut
from .reconstruction import combine, rerank_by_cut, scheme_function
from .seeds import derive_seed


@dataclass(frozen=True)
class DcConfig:
    """Knobs of one divide-and-conquer run."""

    p: int = 3
    t: int = 20
    s: int = 1000
    k: int = 8
    scheme: str = "minXmul"
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    restarts: int = DEFAULT_RESTARTS

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.t < 1:
            raise ValueError("t must be >= 1")
        if self.s < 1:
            raise ValueError("s must be >= 1")
        if self.p < 1:
            raise ValueError("p must be >= 1")
        if self.budget < 1 or self.restarts < 1:
            raise ValueError("budget and restarts must be >= 1")
        scheme_function(self.scheme)


@dataclass
class PartitionNode:
    """One node of the recursive partition tree."""

    nodes: tuple[int, ...]
    separator: tuple[int, ...] = ()
    children: list["PartitionNode"] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list["PartitionNode"]:
        if self.is_leaf:
            return [self]
        out: list[PartitionNode] = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def count(self) -> int:
        return 1 + sum(child.count() for child in self.children)

    def split_nrl(self) -> float | None:
        if self.is_leaf:
            return None
        duplicated = sum(len(c.nodes) for c in self.children)
        return duplicated / len(self.nodes)

    def to_dict(self) -> dict:
        payload: dict = {"nodes": list(self.nodes)}
        if not self.is_leaf:
            payload["separator"] = list(self.separator)
            payload["split_nrl"] = self.split_nrl()
            payload["children"] = [c.to_dict() for c in self.children]
        return payload


def weight_map(m: SolutionMap) -> SolutionMap:
    """Multiply every count by the map's node count (subgraph size weighting)."""
    width = len(m.nodes)
    return SolutionMap(m.nodes, {a: c * width for a, c in m.counts.items()})


def abridge(m: SolutionMap, t: int) -> SolutionMap:
    """First min(t, |m|) entries of an already sorted map, zero counts dropped."""
    if t < 1:
        raise ValueError("t must be >= 1")
    kept: dict[str, int] = {}
    for a, c in m.counts.items():
        if len(kept) == t:
            break
        if c > 0:
            kept[a] = c
    return SolutionMap(m.nodes, kept)


def rescale(m: SolutionMap, s: int) -> SolutionMap:
    """Floor-rescale counts so the total is s or slightly below; zeros dropped."""
    if s < 1:
        raise ValueError("s must be >= 1")
    total = m.total()
    if total <= 0:
        raise ValueError("cannot rescale a map with zero total count")
    scaled = {a: (s * c) // total for a, c in m.counts.items()}
    return SolutionMap(m.nodes, {a: c for a, c in scaled.items() if c > 0})


def dc_qaoa(g: Graph, cfg: DcConfig) -> SolutionMap:
    """Solve MaxCut by recursive partition, QAOA on the leaves, and merge."""
    solution, _ = dc_qaoa_traced(g, cfg)
    return solution


def dc_qaoa_traced(g: Graph, cfg: DcConfig) -> tuple[SolutionMap, PartitionNode]:
    """Like dc_qaoa but also returns the partition tree for reporting."""
    return _solve(g, cfg, level=0)


def tree_nrl(g: Graph, tree: PartitionNode) -> float:
    """Whole-run node redundancy: leaf subproblem sizes over the input size."""
    leaf_graphs = [Graph(nodes=leaf.nodes, edges=()) for leaf in tree.leaves()]
    return nrl(g, leaf_graphs)


def _solve(g: Graph, cfg: DcConfig, level: int) -> tuple[SolutionMap, PartitionNode]:
    if g.n <= cfg.k:
        seed = derive_seed(cfg.seed, "leaf", g.nodes)
        out = qaoa_maxcut(
            g, cfg.p, shots=cfg.s, seed=seed, budget=cfg.budget, restarts=cfg.restarts
        )
        node = PartitionNode(nodes=g.nodes)
    elif any(not g.adjacency[v] for v in g.nodes):
        # A split can leave separator nodes with no edges on this side
        # (separator-internal edges all belong to the other subgraph).
        # Solve the non-trivial part and spread each assignment evenly
        # over the isolated nodes' bits, matching what the mixer does to
        # an unconstrained qubit.
        return _solve_with_isolated(g, cfg, level)
    else:
        split = nlgp(g, cfg.k)
        g1, g2 = split.subgraphs
        m1, node1 = _solve(g1, replace(cfg, seed=derive_seed(cfg.seed, "child", g1.nodes)), level + 1)
        m2, node2 = _solve(g2, replace(cfg, seed=derive_seed(cfg.seed, "child", g2.nodes)), level + 1)
        out = combine(g1, g2, weight_map(m1), weight_map(m2), cfg.scheme)
        if not out.counts:
            raise ReconstructionError(level, g.nodes, stage="combine")
        node = PartitionNode(nodes=g.nodes, separator=split.separator, children=[node1, node2])

    out = rerank_by_cut(g, out)
    out = abridge(out, cfg.t)
    out = rescale(out, cfg.s)
    if not out.counts:
        raise ReconstructionError(level, g.nodes, stage="rescale")
    return out, node


def _solve_with_isolated(
    g: Graph, cfg: DcConfig, level: int
) -> tuple[SolutionMap, PartitionNode]:
    isolated = [v for v in g.nodes if not g.adjacency[v]]
    core_nodes = [v for v in g.nodes if g.adjacency[v]]
    if not core_nodes:
        raise ReconstructionError(level, g.nodes, stage="isolated-only subproblem")
    core = Graph.from_edges(g.edges, nodes=core_nodes)
    core_map, node = _solve(core, cfg, level)
    out = _extend_over_free_nodes(g, core_map, isolated)
    out = rerank_by_cut(g, out)
    out = abridge(out, cfg.t)
    out = rescale(out, cfg.s)
    if not out.counts:
        raise ReconstructionError(level, g.nodes, stage="isolated extension")
    return out, PartitionNode(nodes=g.nodes, separator=node.separator, children=node.children)


def _extend_over_free_nodes(
    g: Graph, core_map: SolutionMap, isolated: list[int]
) -> SolutionMap:
    """Lift a core solution map onto g by splitting counts over free bits."""
    free = sorted(isolated)
    core_pos = {v: i for i, v in enumerate(core_map.nodes)}
    variants = [""]
    for _ in free:
        variants = [prefix + bit for prefix in variants for bit in "01"]
    counts: dict[str, int] = {}
    for assignment, count in core_map.counts.items():
        share, remainder = divmod(count, len(variants))
        for j, bits in enumerate(variants):
            value = share + (1 if j < remainder else 0)
            if value == 0:
                continue
            it = iter(bits)
            key = "".join(
                assignment[core_pos[v]] if v in core_pos else next(it)
                for v in g.nodes
            )
            counts[key] = value
    return SolutionMap(g.nodes, counts)
