import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csbmlab import (
    DegenerateGraphError,
    OperatorSpec,
    ResourceLimitError,
    appnp_step,
    exact_variance_profile,
    ppnp,
    propagate,
    rw_step,
    sample_graph,
    sym_step,
)
from csbmlab.csbm import CsbmParams
from csbmlab.structure import from_edges, random_connected_graph

from conftest import dense_rw, dense_sym


class TestOperatorSpec:
    def test_labels(self):
        assert OperatorSpec.random_walk().label == "random_walk"
        assert OperatorSpec.random_walk(terminal_relu=True).label == "random_walk+relu"
        assert OperatorSpec.appnp(0.1).label == "appnp(alpha=0.1)"
        assert OperatorSpec.ppnp(0.1, 50).label == "ppnp(alpha=0.1,K=50)"

    def test_validation(self):
        with pytest.raises(ValueError):
            OperatorSpec.ppnp(0.0, 10)
        with pytest.raises(ValueError):
            OperatorSpec.ppnp(0.5, 0)
        with pytest.raises(ValueError):
            OperatorSpec.appnp(1.5)
        with pytest.raises(ValueError):
            OperatorSpec("random_walk", alpha=0.5)
        # alpha = 0 collapses appnp to the random walk and is allowed
        OperatorSpec.appnp(0.0)


class TestRwStep:
    def test_constant_fixed_point(self, k5):
        h = np.full((5, 2), 3.25)
        assert np.array_equal(rw_step(k5, h), h)

    def test_star_averages_neighbors(self, star4):
        h = np.array([0.0, 1.0, 1.0, 1.0])
        assert np.allclose(rw_step(star4, h), [1.0, 0.0, 0.0, 0.0])

    def test_zero_maps_to_zero(self, tri_pendant):
        assert np.array_equal(rw_step(tri_pendant, np.zeros(4)), np.zeros(4))

    def test_isolated_node_rejected(self):
        graph = from_edges(3, [(0, 1)])
        with pytest.raises(DegenerateGraphError, match="node 2"):
            rw_step(graph, np.zeros(3))


class TestSymStep:
    def test_regular_graph_matches_rw(self, regular10):
        h = np.linspace(-1, 1, 10)
        assert np.allclose(sym_step(regular10, h), rw_step(regular10, h), atol=1e-12)

    def test_sqrt_degree_fixed_point(self, tri_pendant):
        h = np.sqrt(tri_pendant.degree_vector.astype(float))
        assert np.allclose(sym_step(tri_pendant, h), h, atol=1e-12)

    def test_star_center_indicator(self, star4):
        out = sym_step(star4, np.array([1.0, 0.0, 0.0, 0.0]))
        assert np.allclose(out, [0.0, 1 / np.sqrt(3), 1 / np.sqrt(3), 1 / np.sqrt(3)])


class TestAppnpStep:
    def test_constant_fixed_point(self, k5):
        x = np.full(5, 2.0)
        assert np.allclose(appnp_step(k5, x, x, 0.3), x)

    def test_alpha_one_returns_x(self, tri_pendant):
        h = np.arange(4.0)
        x = np.array([5.0, 6.0, 7.0, 8.0])
        assert np.array_equal(appnp_step(tri_pendant, h, x, 1.0), x)

    def test_definition_on_star(self, star4):
        x = np.array([1.0, 0.0, 0.0, 0.0])
        expected = 0.9 * rw_step(star4, x) + 0.1 * x
        assert np.allclose(appnp_step(star4, x, x, 0.1), expected)


class TestPpnp:
    def test_alpha_one_identity(self, k5):
        x = np.arange(5.0)
        out, tail = ppnp(k5, x, 1.0, 10)
        assert np.allclose(out, x)
        assert tail == 0.0

    def test_tail_bound_value(self, k5):
        _, tail = ppnp(k5, np.zeros(5), 0.1, 50)
        assert tail == pytest.approx(0.9**51, rel=1e-12)

    def test_matches_dense_solve_within_tail(self, tri_pendant):
        rng = np.random.default_rng(0)
        x = rng.normal(size=(4, 2))
        alpha, k = 0.2, 60
        out, tail = ppnp(tri_pendant, x, alpha, k)
        p_dense = dense_rw(tri_pendant)
        exact = alpha * np.linalg.solve(np.eye(4) - (1 - alpha) * p_dense, x)
        assert np.abs(out - exact).max() <= tail * np.abs(x).max() + 1e-12


class TestPropagate:
    def test_depth_zero_identity(self, tri_pendant):
        x = np.arange(8.0).reshape(4, 2)
        for op in (OperatorSpec.random_walk(), OperatorSpec.symmetric(), OperatorSpec.appnp(0.3)):
            assert np.array_equal(propagate(tri_pendant, x, op, 0).matrix, x)

    def test_appnp_alpha_one_any_depth(self, tri_pendant):
        x = np.arange(4.0)
        out = propagate(tri_pendant, x, OperatorSpec.appnp(1.0), 7)
        assert np.array_equal(out.matrix.ravel(), x)

    def test_appnp_alpha_zero_equals_random_walk(self, tri_pendant):
        rng = np.random.default_rng(1)
        x = rng.normal(size=(4, 3))
        a = propagate(tri_pendant, x, OperatorSpec.appnp(0.0), 6).matrix
        b = propagate(tri_pendant, x, OperatorSpec.random_walk(), 6).matrix
        assert np.abs(a - b).max() <= 1e-12

    def test_terminal_relu_clamps_once(self, tri_pendant):
        x = np.array([-1.0, 2.0, -3.0, 4.0])
        out = propagate(tri_pendant, x, OperatorSpec.random_walk(terminal_relu=True), 1)
        lin = propagate(tri_pendant, x, OperatorSpec.random_walk(), 1)
        assert np.array_equal(out.matrix, np.maximum(lin.matrix, 0.0))

    def test_matches_dense_powers(self):
        # Oracle equivalence on a 200-node CSBM sample.
        params = CsbmParams(n_nodes=200, p_intra=0.2, q_inter=0.08, mu1=0.0, mu2=1.0, sigma2=1.0, seed=5)
        graph = sample_graph(params)
        rng = np.random.default_rng(2)
        x = rng.normal(size=(200, 2))
        p_dense = dense_rw(graph)
        s_dense = dense_sym(graph)
        for n in (1, 3, 6):
            assert np.abs(
                propagate(graph, x, OperatorSpec.random_walk(), n).matrix
                - np.linalg.matrix_power(p_dense, n) @ x
            ).max() <= 1e-9
            assert np.abs(
                propagate(graph, x, OperatorSpec.symmetric(), n).matrix
                - np.linalg.matrix_power(s_dense, n) @ x
            ).max() <= 1e-9

    def test_appnp_matches_closed_form_series(self):
        params = CsbmParams(n_nodes=200, p_intra=0.2, q_inter=0.08, mu1=0.0, mu2=1.0, sigma2=1.0, seed=6)
        graph = sample_graph(params)
        rng = np.random.default_rng(3)
        x = rng.normal(size=(200, 1))
        alpha, n = 0.15, 8
        p_dense = dense_rw(graph)
        closed = np.zeros_like(x)
        for k in range(n):
            closed += alpha * (1 - alpha) ** k * (np.linalg.matrix_power(p_dense, k) @ x)
        closed += (1 - alpha) ** n * (np.linalg.matrix_power(p_dense, n) @ x)
        got = propagate(graph, x, OperatorSpec.appnp(alpha), n).matrix
        assert np.abs(got - closed).max() <= 1e-10

    def test_row_stochasticity_preserved(self, fig6_params):
        graph = sample_graph(fig6_params, 0)
        ones = np.ones(graph.n_nodes)
        h = ones
        for _ in range(10):
            h = rw_step(graph, h)
            assert np.abs(h - 1.0).max() <= 1e-12


@settings(max_examples=25, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    a=st.floats(-3, 3, allow_nan=False),
    b=st.floats(-3, 3, allow_nan=False),
    n=st.integers(0, 5),
)
def test_propagate_linear(seed, a, b, n):
    rng = np.random.default_rng(seed)
    graph = random_connected_graph(rng, max_nodes=20)
    x = rng.normal(size=(graph.n_nodes, 2))
    y = rng.normal(size=(graph.n_nodes, 2))
    for op in (OperatorSpec.random_walk(), OperatorSpec.symmetric(), OperatorSpec.appnp(0.2)):
        lhs = propagate(graph, a * x + b * y, op, n).matrix
        rhs = a * propagate(graph, x, op, n).matrix + b * propagate(graph, y, op, n).matrix
        assert np.abs(lhs - rhs).max() <= 1e-10


class TestVarianceProfile:
    def test_depth_zero_is_input_variance(self, tri_pendant):
        profile = exact_variance_profile(tri_pendant, OperatorSpec.random_walk(), 0, 2.5)
        assert np.allclose(profile.per_node, 2.5)

    def test_star_center_non_monotone(self, star4):
        p1 = exact_variance_profile(star4, OperatorSpec.random_walk(), 1, 1.0)
        p2 = exact_variance_profile(star4, OperatorSpec.random_walk(), 2, 1.0)
        assert p1.per_node[0] == pytest.approx(1 / 3, rel=1e-12)
        assert p2.per_node[0] == pytest.approx(1.0, rel=1e-12)

    def test_cycle_symmetric_non_increasing(self, c4):
        prev = exact_variance_profile(c4, OperatorSpec.symmetric(), 0, 1.0).per_node
        for n in range(1, 6):
            cur = exact_variance_profile(c4, OperatorSpec.symmetric(), n, 1.0).per_node
            assert (cur <= prev + 1e-12).all()
            prev = cur

    def test_rw_entries_inside_global_bounds(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            graph = random_connected_graph(rng, max_nodes=30)
            for n in (1, 2, 5):
                profile = exact_variance_profile(graph, OperatorSpec.random_walk(), n, 1.0)
                assert (profile.per_node <= 1.0 + 1e-12).all()
                assert (profile.per_node >= 1.0 / graph.n_nodes - 1e-12).all()

    def test_reachable_set_lower_bound(self, p3):
        # Row of node 0 at depth 1 touches only {1}; at depth 2 only {0, 2}.
        from csbmlab.structure import bfs_distances

        for n in (1, 2, 3):
            profile = exact_variance_profile(p3, OperatorSpec.random_walk(), n, 1.0)
            for v in range(3):
                reach = int((bfs_distances(p3, v) <= n).sum())
                assert profile.per_node[v] >= 1.0 / reach - 1e-12

    def test_matches_dense_row_norms(self, tri_pendant):
        p_dense = dense_rw(tri_pendant)
        for n in (1, 2, 4):
            rows = np.linalg.matrix_power(p_dense, n)
            expected = (rows**2).sum(axis=1) * 1.7
            got = exact_variance_profile(tri_pendant, OperatorSpec.random_walk(), n, 1.7).per_node
            assert np.allclose(got, expected, atol=1e-12)

    def test_ppnp_profile_uses_truncated_rows(self, tri_pendant):
        alpha, k = 0.3, 12
        p_dense = dense_rw(tri_pendant)
        rows = sum(alpha * (1 - alpha) ** j * np.linalg.matrix_power(p_dense, j) for j in range(k + 1))
        expected = (rows**2).sum(axis=1)
        got = exact_variance_profile(tri_pendant, OperatorSpec.ppnp(alpha, k), 0, 1.0).per_node
        assert np.allclose(got, expected, atol=1e-12)

    def test_node_cap_enforced(self, fig6_params):
        graph = sample_graph(fig6_params, 0)
        with pytest.raises(ResourceLimitError, match="Monte Carlo"):
            exact_variance_profile(graph, OperatorSpec.random_walk(), 1, 1.0, node_cap=1000)
