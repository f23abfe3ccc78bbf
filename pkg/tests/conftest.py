import numpy as np
import pytest

from dcqaoa import Graph
from dcqaoa.graphs import components_excluding


def check_separation_invariants(g, split):
    """Assert every structural guarantee of a separator-path split."""
    sep = set(split.separator)
    g1, g2 = split.subgraphs
    n1, n2 = set(g1.nodes), set(g2.nodes)
    assert sep <= n1 and sep <= n2
    assert n1 | n2 == set(g.nodes)
    assert n1 & n2 == sep
    e1, e2 = set(g1.edges), set(g2.edges)
    assert e1 | e2 == set(g.edges)
    assert not (e1 & e2)
    for u, v in g.edges:
        assert not (
            (u in n1 - sep and v in n2 - sep) or (u in n2 - sep and v in n1 - sep)
        )
    comps = components_excluding(g, sep)
    assert len(comps) == 2
    assert {frozenset(c) for c in comps} == {frozenset(n1 - sep), frozenset(n2 - sep)}


def toy_graph() -> Graph:
    """Triangle {0,1,2} joined to the path 2-3-4; MaxCut 4, six optima."""
    return Graph.from_edges([(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])


def triangle() -> Graph:
    return Graph.from_edges([(0, 1), (0, 2), (1, 2)])


def k2() -> Graph:
    return Graph.from_edges([(0, 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
