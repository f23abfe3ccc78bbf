import pytest

from dcqaoa import (
    DcConfig,
    Graph,
    SolutionMap,
    abridge,
    approximation_ratio,
    best_sampled_cut,
    chain_maxcut,
    dc_qaoa,
    dc_qaoa_traced,
    expectation_value,
    qaoa_maxcut,
    random_chain_graph,
    rerank_by_cut,
    rescale,
    tree_nrl,
    weight_map,
)
from dcqaoa.seeds import derive_seed
from conftest import toy_graph


class TestWeightMap:
    def test_multiplies_by_node_count(self):
        m = SolutionMap(tuple(range(6)), {"010101": 50})
        assert weight_map(m).counts == {"010101": 300}

    def test_empty(self):
        m = SolutionMap(tuple(range(3)), {})
        assert weight_map(m).counts == {}

    def test_preserves_order(self):
        m = SolutionMap((0, 1), {"01": 9, "10": 4, "00": 1})
        assert list(weight_map(m).counts) == ["01", "10", "00"]


class TestAbridge:
    def test_shorter_map_unchanged(self):
        m = SolutionMap((0, 1, 2), {format(b, "03b"): 10 - b for b in range(5)})
        assert abridge(m, 20).counts == m.counts

    def test_truncates_to_t(self):
        m = SolutionMap((0, 1, 2, 3, 4, 5), {format(b, "06b"): 50 - b for b in range(50)})
        out = abridge(m, 20)
        assert len(out.counts) == 20
        assert min(out.counts.values()) == 31

    def test_zero_counts_dropped(self):
        m = SolutionMap((0, 1), {"01": 5, "10": 0, "11": 3})
        assert abridge(m, 20).counts == {"01": 5, "11": 3}

    def test_invalid_t(self):
        with pytest.raises(ValueError):
            abridge(SolutionMap((0,), {"0": 1}), 0)


class TestRescale:
    def test_already_scaled(self):
        m = SolutionMap((0, 1), {"01": 600, "10": 400})
        assert rescale(m, 1000).counts == {"01": 600, "10": 400}

    def test_upscales(self):
        m = SolutionMap((0, 1), {"01": 3, "10": 1})
        assert rescale(m, 1000).counts == {"01": 750, "10": 250}

    def test_floor_drops_small_entries(self):
        m = SolutionMap((0, 1), {"00": 1, "01": 1, "10": 1})
        out = rescale(m, 2)
        assert out.total() <= 2
        assert all(c > 0 for c in out.counts.values())

    def test_zero_total_rejected(self):
        with pytest.raises(ValueError):
            rescale(SolutionMap((0,), {}), 10)

    def test_huge_counts_exact_floor(self):
        big = 10**30
        m = SolutionMap((0, 1), {"01": 2 * big, "10": big})
        out = rescale(m, 900)
        assert out.counts == {"01": 600, "10": 300}


class TestDcQaoa:
    def test_base_case_equals_postprocessed_qaoa(self):
        g = toy_graph()
        cfg = DcConfig(k=8, s=500, t=20, p=2, seed=9, budget=60, restarts=2)
        via_dc = dc_qaoa(g, cfg)
        seed = derive_seed(cfg.seed, "leaf", g.nodes)
        direct = qaoa_maxcut(g, cfg.p, shots=cfg.s, seed=seed, budget=cfg.budget, restarts=cfg.restarts)
        expected = rescale(abridge(rerank_by_cut(g, direct), cfg.t), cfg.s)
        assert via_dc.counts == expected.counts

    def test_toy_graph_finds_optimum(self):
        cfg = DcConfig(k=4, seed=7, budget=60, restarts=2)
        sol, tree = dc_qaoa_traced(toy_graph(), cfg)
        assert approximation_ratio(toy_graph(), sol, "best_sampled") == 1.0
        assert tree.separator == (2,)
        assert len(tree.leaves()) == 2
        assert tree_nrl(toy_graph(), tree) == pytest.approx(1.2)

    def test_output_respects_t_and_s(self):
        cfg = DcConfig(k=4, t=5, s=300, seed=3, budget=40, restarts=1)
        sol = dc_qaoa(toy_graph(), cfg)
        assert len(sol.counts) <= 5
        assert sol.total() <= 300
        assert all(len(a) == 5 for a in sol.counts)

    def test_deterministic_output(self):
        cfg = DcConfig(k=4, seed=21, budget=40, restarts=2)
        a = dc_qaoa(toy_graph(), cfg)
        b = dc_qaoa(toy_graph(), cfg)
        assert a.entries() == b.entries()

    def test_isolated_separator_node_in_child(self):
        # splitting this star at (0, 1) leaves node 1 with no edges on one side
        g = Graph.from_edges([(0, 1), (0, 2), (0, 3)])
        cfg = DcConfig(k=3, seed=5, budget=40, restarts=2)
        sol = dc_qaoa(g, cfg)
        assert sol.total() >= 1
        assert best_sampled_cut(g, sol) == 3

    def test_hundred_node_chain_reaches_optimum(self):
        g = random_chain_graph(100, seed=2)
        cfg = DcConfig(k=8, s=2000, t=20, seed=6, budget=60, restarts=2)
        sol = dc_qaoa(g, cfg)
        assert best_sampled_cut(g, sol) / chain_maxcut(g) >= 0.97

    def test_expectation_tracks_counts(self):
        cfg = DcConfig(k=4, seed=11, budget=60, restarts=2)
        sol = dc_qaoa(toy_graph(), cfg)
        ev = expectation_value(toy_graph(), sol)
        best = best_sampled_cut(toy_graph(), sol)
        assert 0 < ev <= best

    def test_mean_quality_non_decreasing_in_samples(self):
        g = random_chain_graph(30, seed=1)
        exact = chain_maxcut(g)
        means = []
        for s in (250, 2000):
            runs = []
            for rep in range(3):
                cfg = DcConfig(k=8, s=s, t=20, seed=derive_seed(13, s, rep), budget=60, restarts=2)
                runs.append(best_sampled_cut(g, dc_qaoa(g, cfg)) / exact)
            means.append(sum(runs) / len(runs))
        assert means[1] >= means[0] - 1e-9


class TestDcConfig:
    def test_defaults(self):
        cfg = DcConfig()
        assert (cfg.p, cfg.t, cfg.s, cfg.k) == (3, 20, 1000, 8)
        assert cfg.scheme == "minXmul"

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"k": 1},
            {"t": 0},
            {"s": 0},
            {"p": 0},
            {"budget": 0},
            {"restarts": 0},
            {"scheme": "max"},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            DcConfig(**kwargs)


class TestPartitionTree:
    def test_single_leaf_when_graph_fits(self):
        cfg = DcConfig(k=8, seed=2, budget=40, restarts=1)
        _, tree = dc_qaoa_traced(toy_graph(), cfg)
        assert tree.is_leaf
        assert tree.count() == 1
        assert tree_nrl(toy_graph(), tree) == 1.0

    def test_tree_serialization(self):
        cfg = DcConfig(k=4, seed=2, budget=40, restarts=1)
        _, tree = dc_qaoa_traced(toy_graph(), cfg)
        payload = tree.to_dict()
        assert payload["separator"] == [2]
        assert len(payload["children"]) == 2
        assert payload["split_nrl"] == pytest.approx(1.2)
