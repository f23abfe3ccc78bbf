import math

import numpy as np
import pytest

from dcqaoa import (
    AnsatzParams,
    SizeLimitError,
    apply_cost_layer,
    apply_mixer_layer,
    build_initial_state,
    cut_size,
    cut_value_table,
    expectation_value,
    final_state,
    optimize_params,
    qaoa_expectation,
    qaoa_maxcut,
    random_graph,
    sample_solution_map,
)
from conftest import cycle_graph, k2, triangle


def dense_k2_expectation(gamma, beta):
    """Independent 4x4 dense-matrix simulation of one QAOA layer on K2."""
    cuts = np.array([0.0, 1.0, 1.0, 0.0])  # |00>, |01>, |10>, |11>
    cost = np.diag(np.exp(-1j * gamma * cuts))
    rx = np.array(
        [
            [math.cos(beta), -1j * math.sin(beta)],
            [-1j * math.sin(beta), math.cos(beta)],
        ]
    )
    mixer = np.kron(rx, rx)
    state = mixer @ cost @ np.full(4, 0.5, dtype=complex)
    probs = np.abs(state) ** 2
    return float(probs @ cuts)


def grid_best(g, steps=100):
    best = -1.0
    for gamma in np.linspace(0.0, 2.0 * math.pi, steps, endpoint=False):
        for beta in np.linspace(0.0, math.pi, steps, endpoint=False):
            val = qaoa_expectation(g, AnsatzParams(((gamma, beta),)))
            if val > best:
                best = val
    return best


class TestInitialState:
    def test_one_qubit(self):
        state = build_initial_state(1)
        assert np.allclose(state, [1 / math.sqrt(2)] * 2)

    def test_two_qubits_uniform(self):
        assert np.allclose(build_initial_state(2), [0.5] * 4)

    def test_norm(self):
        state = build_initial_state(3)
        assert abs(np.linalg.norm(state) - 1.0) < 1e-12

    def test_cap(self):
        with pytest.raises(SizeLimitError):
            build_initial_state(21)
        with pytest.raises(ValueError):
            build_initial_state(0)


class TestCostLayer:
    def test_zero_angle_identity(self):
        state = build_initial_state(3)
        assert np.allclose(apply_cost_layer(state, triangle(), 0.0), state)

    def test_full_period_identity(self):
        state = build_initial_state(3)
        out = apply_cost_layer(state, triangle(), 2.0 * math.pi)
        assert np.allclose(out, state, atol=1e-12)

    def test_phase_only_keeps_probabilities(self):
        state = build_initial_state(2)
        out = apply_cost_layer(state, k2(), math.pi / 2)
        assert np.allclose(np.abs(out) ** 2, np.abs(state) ** 2)

    def test_table_matches_cut_size(self):
        g = random_graph(6, 0.5, seed=3)
        table = cut_value_table(g)
        for b in range(1 << 6):
            assert table[b] == cut_size(g, format(b, "06b"))


class TestMixerLayer:
    def test_zero_angle_identity(self):
        state = build_initial_state(3)
        assert np.allclose(apply_mixer_layer(state, 0.0), state)

    def test_half_pi_is_global_flip(self):
        n = 4
        state = np.zeros(1 << n, dtype=complex)
        state[0] = 1.0  # |0000>
        out = apply_mixer_layer(state, math.pi / 2)
        probs = np.abs(out) ** 2
        assert probs[-1] == pytest.approx(1.0, abs=1e-12)

    def test_unitary_on_random_state(self, rng):
        state = rng.normal(size=8) + 1j * rng.normal(size=8)
        state /= np.linalg.norm(state)
        out = apply_mixer_layer(state, 0.37)
        assert abs(np.linalg.norm(out) - 1.0) < 1e-12


class TestExpectation:
    def test_zero_angles_half_edges(self, rng):
        for _ in range(10):
            g = random_graph(int(rng.integers(2, 10)), 0.5, seed=int(rng.integers(0, 10**6)))
            params = AnsatzParams(((0.0, 0.0), (0.0, 0.0)))
            assert qaoa_expectation(g, params) == pytest.approx(g.m / 2, abs=1e-12)

    def test_k2_matches_dense_matrix(self, rng):
        for _ in range(20):
            gamma = float(rng.uniform(0, 2 * math.pi))
            beta = float(rng.uniform(0, math.pi))
            ours = qaoa_expectation(k2(), AnsatzParams(((gamma, beta),)))
            assert ours == pytest.approx(dense_k2_expectation(gamma, beta), abs=1e-9)

    def test_k2_depth_one_reaches_optimum(self):
        params, value = optimize_params(k2(), p=1, seed=11)
        assert value >= 0.99
        assert value <= grid_best(k2(), steps=60) + 0.01

    def test_triangle_depth_one_band(self):
        _, value = optimize_params(triangle(), p=1, seed=11)
        oracle = grid_best(triangle(), steps=100)
        assert 1.5 < value <= 2.0
        assert value >= oracle - 0.02

    def test_monotone_depth_on_fixed_instance(self):
        g = cycle_graph(6)
        _, shallow = optimize_params(g, p=1, seed=4, restarts=5)
        _, deep = optimize_params(g, p=2, seed=4, restarts=5)
        assert deep >= shallow - 1e-6

    def test_norm_preserved_through_deep_circuit(self, rng):
        g = random_graph(6, 0.5, seed=9)
        layers = tuple(
            (float(rng.uniform(0, 2 * math.pi)), float(rng.uniform(0, math.pi)))
            for _ in range(8)
        )
        state = final_state(g, AnsatzParams(layers))
        assert abs(np.linalg.norm(state) - 1.0) < 1e-9


class TestOptimizer:
    def test_deterministic(self):
        g = random_graph(5, 0.6, seed=2)
        first = optimize_params(g, p=2, seed=13, budget=80, restarts=3)
        second = optimize_params(g, p=2, seed=13, budget=80, restarts=3)
        assert first[0] == second[0]
        assert first[1] == second[1]

    def test_budget_one_returns_initial_point(self):
        params, value = optimize_params(triangle(), p=1, seed=3, budget=1, restarts=2)
        assert params.p == 1
        assert 0.0 <= value <= 2.0

    def test_validation(self):
        with pytest.raises(ValueError):
            optimize_params(k2(), p=0, seed=1)
        with pytest.raises(ValueError):
            optimize_params(k2(), p=1, seed=1, budget=0)


class TestSampling:
    def test_shot_conservation(self):
        params, _ = optimize_params(triangle(), p=2, seed=5)
        m = sample_solution_map(triangle(), params, shots=1000, seed=6)
        assert m.total() == 1000

    def test_k2_optimum_concentrates(self):
        params, _ = optimize_params(k2(), p=1, seed=11)
        m = sample_solution_map(k2(), params, shots=1000, seed=3)
        assert set(m.counts) <= {"01", "10"}

    def test_deterministic(self):
        params, _ = optimize_params(triangle(), p=1, seed=5)
        a = sample_solution_map(triangle(), params, shots=500, seed=17)
        b = sample_solution_map(triangle(), params, shots=500, seed=17)
        assert a.entries() == b.entries()

    def test_sorted_by_count(self):
        params, _ = optimize_params(triangle(), p=1, seed=5)
        m = sample_solution_map(triangle(), params, shots=2000, seed=9)
        counts = [c for _, c in m.entries()]
        assert counts == sorted(counts, reverse=True)

    def test_complement_symmetry_of_distribution(self, rng):
        g = random_graph(6, 0.5, seed=21)
        layers = tuple(
            (float(rng.uniform(0, 2 * math.pi)), float(rng.uniform(0, math.pi)))
            for _ in range(3)
        )
        state = final_state(g, AnsatzParams(layers))
        probs = np.abs(state) ** 2
        flipped = probs[::-1]  # basis index complement is bit reversal of 2^n-1-b
        assert np.max(np.abs(probs - flipped)) < 1e-9

    def test_sampling_consistency_with_exact_expectation(self):
        g = random_graph(6, 0.5, seed=21)
        params, value = optimize_params(g, p=2, seed=8)
        m = sample_solution_map(g, params, shots=100_000, seed=30)
        table = cut_value_table(g)
        state = final_state(g, params)
        probs = np.abs(state) ** 2
        probs /= probs.sum()
        variance = float(probs @ (table - value) ** 2)
        tolerance = 3.0 * math.sqrt(variance / 100_000)
        assert expectation_value(g, m) == pytest.approx(value, abs=max(tolerance, 1e-3))


class TestQaoaMaxcut:
    def test_k2_dominated_by_optima(self):
        m = qaoa_maxcut(k2(), p=1, shots=1000, seed=2)
        top_two = sum(c for _, c in m.entries()[:2])
        assert set(list(m.counts)[:2]) == {"01", "10"}
        assert top_two >= 990

    def test_single_node_graph(self):
        g = random_graph(1, 0.5, seed=7)
        m = qaoa_maxcut(g, p=1, shots=200, seed=4)
        assert set(m.counts) <= {"0", "1"}
        assert m.total() == 200
        assert expectation_value(g, m) == 0.0

    def test_triangle_depth_three_hits_optimum(self):
        m = qaoa_maxcut(triangle(), p=3, shots=1000, seed=3)
        assert max(cut_size(triangle(), a) for a in m.counts) == 2


def test_ansatz_params_validation():
    with pytest.raises(ValueError):
        AnsatzParams(())
    with pytest.raises(ValueError):
        AnsatzParams(((float("nan"), 0.0),))
    p = AnsatzParams.from_flat([0.1, 0.2, 0.3, 0.4])
    assert p.layers == ((0.1, 0.2), (0.3, 0.4))
    assert list(p.as_flat()) == [0.1, 0.2, 0.3, 0.4]
