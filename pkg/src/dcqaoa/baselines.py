"""Classical comparison solvers for approximation-ratio benchmarking."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .graphs import Graph
from .seeds import derive_seed


@dataclass(frozen=True)
class BaselineResult:
    best_assignment: str
    best_cut: int
    evaluations: int
    elapsed: float


def _cuts_of_bit_rows(g: Graph, rows: np.ndarray) -> np.ndarray:
    cuts = np.zeros(rows.shape[0], dtype=np.int64)
    for pu, pv in g.edge_positions:
        cuts += rows[:, pu] != rows[:, pv]
    return cuts


def random_search(g: Graph, budget: int, seed: int) -> BaselineResult:
    """Best cut among `budget` uniform random assignments (first bit fixed to 0)."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    start = time.perf_counter()
    n = g.n
    rng = np.random.default_rng(seed)
    rows = np.zeros((budget, n), dtype=np.uint8)
    if n > 1:
        rows[:, 1:] = rng.integers(0, 2, size=(budget, n - 1), dtype=np.uint8)
    cuts = _cuts_of_bit_rows(g, rows)
    best = int(np.argmax(cuts))
    assignment = "".join("1" if b else "0" for b in rows[best])
    return BaselineResult(
        best_assignment=assignment,
        best_cut=int(cuts[best]),
        evaluations=budget,
        elapsed=time.perf_counter() - start,
    )


def greedy_local_search(g: Graph, seed: int, restarts: int = 10) -> BaselineResult:
    """Single-bit-flip hill climbing from random starts; best local optimum wins.

    Each climb flips the node with the largest positive cut gain (lowest
    label on ties) until no flip improves, so the result is 1-flip optimal.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    start = time.perf_counter()
    n = g.n
    adj_pos = {
        g.index[v]: [g.index[w] for w in nbrs] for v, nbrs in g.adjacency.items()
    }
    best_bits: np.ndarray | None = None
    best_cut = -1
    evaluations = 0
    for r in range(restarts):
        rng = np.random.default_rng(derive_seed(seed, "restart", r))
        bits = rng.integers(0, 2, size=n, dtype=np.int8)
        bits[0] = 0
        cut = int(_cuts_of_bit_rows(g, bits.reshape(1, -1))[0])
        evaluations += 1
        improved = True
        while improved:
            improved = False
            best_gain = 0
            best_node = -1
            for v in range(n):
                same = sum(1 for w in adj_pos.get(v, ()) if bits[w] == bits[v])
                diff = len(adj_pos.get(v, ())) - same
                gain = same - diff
                evaluations += 1
                if gain > best_gain:
                    best_gain = gain
                    best_node = v
            if best_node >= 0:
                bits[best_node] ^= 1
                cut += best_gain
                improved = True
        if cut > best_cut:
            best_cut = cut
            best_bits = bits.copy()
    assert best_bits is not None
    assignment = "".join("1" if b else "0" for b in best_bits)
    return BaselineResult(
        best_assignment=assignment,
        best_cut=best_cut,
        evaluations=evaluations,
        elapsed=time.perf_counter() - start,
    )
