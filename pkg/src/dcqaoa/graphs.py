"""Undirected unweighted graphs, cut evaluation, and sampling-distribution maps.

Conventions used everywhere in this package:

* Nodes are non-negative integer labels; a graph stores them sorted.
* A cut assignment is a string over ``{0,1}``; character ``j`` gives the
  cut-set membership of the ``j``-th smallest node of the associated node
  set ('1' = cut set S, '0' = complement).
* A ``SolutionMap`` pairs assignments with non-negative sample counts and
  remembers which node set the assignment positions index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import hashlib

import numpy as np

from .errors import (
    EdgeListParseError,
    GenerationError,
    GraphValidationError,
    SizeLimitError,
)

BRUTE_FORCE_LIMIT = 24
_GENERATION_RETRIES = 200


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph: sorted node tuple plus sorted (u < v) edge tuple.

    Use :meth:`from_edges` to build one from raw data; it canonicalizes and
    validates. Direct construction assumes canonical fields.
    """

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]] = (),
        nodes: Iterable[int] = (),
    ) -> "Graph":
        node_set = set(nodes)
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise GraphValidationError(f"self-loop at node {u}")
            if u < 0 or v < 0:
                raise GraphValidationError(f"negative node label in edge ({u}, {v})")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphValidationError(f"duplicate edge ({e[0]}, {e[1]})")
            seen.add(e)
            node_set.update(e)
        if any(n < 0 for n in node_set):
            raise GraphValidationError("negative node label")
        return cls(nodes=tuple(sorted(node_set)), edges=tuple(sorted(seen)))

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[int, int]:
        """Map node label -> bit position (rank in the sorted node tuple)."""
        return {v: i for i, v in enumerate(self.nodes)}

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(nb)) for v, nb in adj.items()}

    @cached_property
    def edge_positions(self) -> np.ndarray:
        """(m, 2) array of bit positions for each edge, for vectorized cuts."""
        if not self.edges:
            return np.zeros((0, 2), dtype=np.int64)
        idx = self.index
        return np.array([(idx[u], idx[v]) for u, v in self.edges], dtype=np.int64)

    def digest(self) -> str:
        """Stable content hash of the canonical serialization."""
        return hashlib.sha256(serialize_edge_list(self).encode("utf-8")).hexdigest()


@dataclass
class SolutionMap:
    """Ordered assignment -> count map over a fixed node set.

    Entry order is meaningful: producers that promise a sorted map emit
    entries in non-increasing count order, ties broken by lexicographically
    smaller assignment first.
    """

    nodes: tuple[int, ...]
    counts: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        self.nodes = tuple(self.nodes)
        if list(self.nodes) != sorted(set(self.nodes)):
            raise ValueError("node set must be strictly increasing")
        width = len(self.nodes)
        for key, cnt in self.counts.items():
            if len(key) != width or set(key) - {"0", "1"}:
                raise ValueError(f"bad assignment {key!r} for {width} nodes")
            if not isinstance(cnt, int) or cnt < 0:
                raise ValueError(f"count for {key!r} must be a non-negative integer")

    def total(self) -> int:
        return sum(self.counts.values())

    def entries(self) -> list[tuple[str, int]]:
        return list(self.counts.items())

    def sorted_by_count(self) -> "SolutionMap":
        """Non-increasing count order, lexicographically smaller string first on ties."""
        ordered = sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return SolutionMap(self.nodes, dict(ordered))

    def to_dict(self) -> dict:
        return {"nodes": list(self.nodes), "counts": dict(self.counts)}

    @classmethod
    def from_dict(cls, payload: dict) -> "SolutionMap":
        return cls(tuple(payload["nodes"]), {k: int(v) for k, v in payload["counts"].items()})


def complement(assignment: str) -> str:
    """Flip every bit of a cut assignment."""
    return assignment.translate(str.maketrans("01", "10"))


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated integer pairs, one edge per line.

    '#' starts a comment; a single-token line declares an isolated node.
    """
    edges: list[tuple[int, int]] = []
    isolated: list[int] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise EdgeListParseError(line_no, f"non-integer token in {line!r}") from None
        if len(values) == 1:
            isolated.append(values[0])
        elif len(values) == 2:
            edges.append((values[0], values[1]))
        else:
            raise EdgeListParseError(line_no, f"expected 1 or 2 tokens, got {len(values)}")
    return Graph.from_edges(edges, nodes=isolated)


def serialize_edge_list(g: Graph) -> str:
    """Canonical text form: edges sorted by (min, max), then isolated nodes."""
    touched = {u for e in g.edges for u in e}
    lines = [f"{u} {v}" for u, v in g.edges]
    lines.extend(str(v) for v in g.nodes if v not in touched)
    return "\n".join(lines) + ("\n" if lines else "")


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def save_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_edge_list(g))


def random_graph(n: int, edge_prob: float, seed: int) -> Graph:
    """Connected Erdős–Rényi G(n, p) sample, deterministic for a fixed seed.

    Disconnected draws are re-sampled with an incremented seed, up to a
    retry cap.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < edge_prob <= 1.0:
        raise ValueError("edge_prob must be in (0, 1]")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for attempt in range(_GENERATION_RETRIES):
        rng = np.random.default_rng(seed + attempt)
        mask = rng.random(len(pairs)) < edge_prob
        g = Graph.from_edges(
            [e for e, keep in zip(pairs, mask) if keep], nodes=range(n)
        )
        if len(dfs_connected_components(g)) == 1:
            return g
    raise GenerationError(
        f"no connected G({n}, {edge_prob}) sample within {_GENERATION_RETRIES} retries of seed {seed}"
    )


_CHAIN_BLOCKS = (2, 3, 4)


def random_chain_graph(n: int, seed: int) -> Graph:
    """Random chain of small complete blocks glued at single shared nodes.

    Produces sparse connected graphs whose biconnected pieces stay tiny, so
    single-node separator paths exist at every recursion level. This is the
    benchmark family for large instances: the separator search is cheap and
    exact optima decompose block-by-block (see chain_maxcut).
    """
    if n < 2:
        raise ValueError("chain graphs need at least 2 nodes")
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = []
    glue = 0
    next_label = 1
    while next_label < n:
        size = int(rng.choice(_CHAIN_BLOCKS))
        size = min(size, n - next_label + 1)
        block = [glue] + list(range(next_label, next_label + size - 1))
        for i in range(len(block)):
            for j in range(i + 1, len(block)):
                edges.append((block[i], block[j]))
        glue = block[-1]
        next_label += size - 1
    return Graph.from_edges(edges, nodes=range(n))


def chain_maxcut(g: Graph) -> int:
    """Exact MaxCut for graphs whose biconnected blocks share single nodes.

    Blocks are edge-disjoint and meet only at cut vertices, so the optimum
    is the sum of per-block optima (each block can be complemented to agree
    on its shared node). Valid for the random_chain_graph family.
    """
    total = 0
    for block_nodes, block_edges in _biconnected_blocks(g):
        sub = Graph.from_edges(block_edges, nodes=block_nodes)
        block_best, _ = brute_force_maxcut(sub)
        total += block_best
    return total


def _biconnected_blocks(g: Graph):
    """(nodes, edges) per biconnected component, via Hopcroft-Tarjan lowpoints."""
    adj = g.adjacency
    visited: set[int] = set()
    depth: dict[int, int] = {}
    low: dict[int, int] = {}
    stack: list[tuple[int, int]] = []
    blocks: list[tuple[set[int], list[tuple[int, int]]]] = []

    def emit(until_edge):
        block_edges = []
        while stack:
            e = stack.pop()
            block_edges.append(e)
            if e == until_edge:
                break
        nodes = {u for e in block_edges for u in e}
        blocks.append((nodes, block_edges))

    for root in g.nodes:
        if root in visited:
            continue
        # iterative DFS, tracking tree edges and low-points
        visited.add(root)
        depth[root] = 0
        low[root] = 0
        frame = [(root, None, iter(adj[root]))]
        while frame:
            v, parent, nbrs = frame[-1]
            advanced = False
            for w in nbrs:
                if w == parent:
                    continue
                if w not in visited:
                    visited.add(w)
                    depth[w] = depth[v] + 1
                    low[w] = depth[w]
                    stack.append((v, w))
                    frame.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                elif depth[w] < depth[v]:
                    stack.append((v, w))
                    low[v] = min(low[v], depth[w])
            if not advanced:
                frame.pop()
                if frame:
                    u = frame[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= depth[u]:
                        emit((u, v))
    return blocks


def cut_size(g: Graph, assignment: str) -> int:
    """Number of edges whose endpoints get different bits."""
    if len(assignment) != g.n:
        raise ValueError(
            f"assignment length {len(assignment)} != node count {g.n}"
        )
    idx = g.index
    return sum(1 for u, v in g.edges if assignment[idx[u]] != assignment[idx[v]])


def _cut_values_for_indices(g: Graph, indices: np.ndarray, width: int) -> np.ndarray:
    """Vectorized cut sizes for basis indices under the MSB-first convention."""
    cuts = np.zeros(indices.shape, dtype=np.int32)
    for pu, pv in g.edge_positions:
        cuts += ((indices >> (width - 1 - pu)) ^ (indices >> (width - 1 - pv))) & 1
    return cuts


def brute_force_maxcut(g: Graph, limit: int = BRUTE_FORCE_LIMIT) -> tuple[int, set[str]]:
    """Exhaustive MaxCut: (max cut, all optimal assignments incl. complements).

    Enumerates half the space by fixing the smallest node's bit to '0' and
    mirrors the winners, so both orientations are reported.
    """
    n = g.n
    if n == 0:
        raise ValueError("empty graph has no cut assignments")
    if n > limit:
        raise SizeLimitError(f"{n} nodes exceeds exhaustive limit {limit}")
    if n == 1:
        return 0, {"0", "1"}
    half = np.arange(1 << (n - 1), dtype=np.int32)
    cuts = _cut_values_for_indices(g, half, n)
    best = int(cuts.max())
    winners = {format(int(b), f"0{n}b") for b in half[cuts == best]}
    winners |= {complement(w) for w in winners}
    return best, winners


def dfs_connected_components(g: Graph) -> list[set[int]]:
    """Maximal connected components, ascending by smallest member."""
    return components_excluding(g, frozenset())


def components_excluding(g: Graph, removed: frozenset[int] | set[int]) -> list[set[int]]:
    """Connected components of g with `removed` nodes (and incident edges) deleted."""
    adj = g.adjacency
    seen: set[int] = set()
    comps: list[set[int]] = []
    for start in g.nodes:
        if start in removed or start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in removed or w in seen:
                    continue
                seen.add(w)
                comp.add(w)
                stack.append(w)
        comps.append(comp)
    return comps


def expectation_value(g: Graph, m: SolutionMap) -> float:
    """Count-weighted average cut size of a sampling distribution."""
    total = m.total()
    if not m.counts or total <= 0:
        raise ValueError("expectation value needs a non-empty map with positive total count")
    weighted = sum(cnt * cut_size(g, a) for a, cnt in m.counts.items())
    return weighted / total


def best_sampled_cut(g: Graph, m: SolutionMap) -> int:
    if not m.counts:
        raise ValueError("empty solution map")
    return max(cut_size(g, a) for a in m.counts)


def approximation_ratio(
    g: Graph,
    m: SolutionMap,
    mode: str = "expectation",
    max_cut: int | None = None,
) -> float:
    """Achieved cut relative to the optimum.

    mode 'expectation' uses the count-weighted average, 'best_sampled' the
    best assignment present in the map. When `max_cut` is not supplied the
    exact optimum is computed by brute force (small graphs only).
    """
    if mode not in ("expectation", "best_sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if max_cut is None:
        max_cut, _ = brute_force_maxcut(g)
    if max_cut == 0:
        return 1.0
    if mode == "expectation":
        return expectation_value(g, m) / max_cut
    return best_sampled_cut(g, m) / max_cut
