import math

import numpy as np
import pytest

from csbmlab import (
    CsbmParams,
    check_regime,
    expected_operator_spectrum,
    mean_gap,
    sample_features,
    sample_graph,
)
from csbmlab.csbm import canonical_labels


def make(n=4, p=1.0, q=1.0, mu1=0.0, mu2=1.0, sigma2=1.0, d=1, seed=0):
    return CsbmParams(n_nodes=n, p_intra=p, q_inter=q, mu1=mu1, mu2=mu2, sigma2=sigma2, feature_dim=d, seed=seed)


class TestParamsValidation:
    def test_odd_n_rejected(self):
        with pytest.raises(ValueError, match="even"):
            make(n=5)

    def test_q_above_p_rejected(self):
        with pytest.raises(ValueError, match="q_inter <= p_intra"):
            make(p=0.1, q=0.2)

    def test_q_zero_rejected(self):
        with pytest.raises(ValueError):
            make(p=0.5, q=0.0)

    def test_p_equal_q_allowed(self):
        # Regime/branch examples construct p = q configurations; homophily
        # violations surface via check_regime, not as construction errors.
        params = make(p=0.3, q=0.3)
        assert not check_regime(params).homophilous

    def test_mu_order_enforced(self):
        with pytest.raises(ValueError, match="mu1 < mu2"):
            make(mu1=2.0, mu2=1.0)

    def test_sigma2_positive(self):
        with pytest.raises(ValueError, match="sigma2"):
            make(sigma2=0.0)


class TestSampleGraph:
    def test_complete_when_p_q_one(self):
        graph = sample_graph(make(n=4, p=1.0, q=1.0))
        assert np.array_equal(graph.degree_vector, [3, 3, 3, 3])
        assert graph.adjacency.nnz == 12

    def test_p_one_tiny_q_disjoint_intra_edges(self):
        # q must be > 0; make it so small no inter edge appears.
        graph = sample_graph(make(n=4, p=1.0, q=1e-12))
        assert np.array_equal(graph.degree_vector, [1, 1, 1, 1])
        assert graph.adjacency[0, 1] == 1.0
        assert graph.adjacency[2, 3] == 1.0

    def test_adjacency_symmetric_zero_diagonal(self, fig6_params):
        graph = sample_graph(fig6_params, 3)
        adj = graph.adjacency
        assert (adj != adj.T).nnz == 0
        assert adj.diagonal().sum() == 0.0

    def test_labels_balanced_and_block_ordered(self, fig6_params):
        graph = sample_graph(fig6_params, 0)
        half = fig6_params.half
        assert (graph.labels[:half] == 1).all()
        assert (graph.labels[half:] == 2).all()

    def test_deterministic_per_trial(self, fig6_params):
        g1 = sample_graph(fig6_params, 5)
        g2 = sample_graph(fig6_params, 5)
        assert (g1.adjacency != g2.adjacency).nnz == 0
        g3 = sample_graph(fig6_params, 6)
        assert (g1.adjacency != g3.adjacency).nnz > 0

    def test_mean_degree_concentrates(self, fig6_params):
        # d-bar = N(p+q)/2 ~ 15.2; the per-graph mean degree stays well
        # inside +-15% over 20 samples.
        means = [sample_graph(fig6_params, t).degree_vector.mean() for t in range(20)]
        assert all(13.0 <= m <= 17.5 for m in means)

    def test_edge_frequencies_match_probabilities(self):
        # Aggregate intra/inter edge frequencies over 200 samples at N=500.
        params = make(n=500, p=0.1, q=0.05, mu1=0.0, mu2=1.0, seed=11)
        t_samples = 200
        half = params.half
        intra_pairs = 2 * (half * (half - 1) // 2)
        inter_pairs = half * half
        intra_edges = 0
        inter_edges = 0
        for t in range(t_samples):
            adj = sample_graph(params, t).adjacency
            block = adj[:half, :half]
            intra_edges += block.nnz // 2
            intra_edges += adj[half:, half:].nnz // 2
            inter_edges += adj[:half, half:].nnz
        p_hat = intra_edges / (t_samples * intra_pairs)
        q_hat = inter_edges / (t_samples * inter_pairs)
        assert abs(p_hat - params.p_intra) <= 4 * math.sqrt(params.p_intra * (1 - params.p_intra) / t_samples)
        assert abs(q_hat - params.q_inter) <= 4 * math.sqrt(params.q_inter * (1 - params.q_inter) / t_samples)


class TestSampleFeatures:
    def test_degenerate_sigma_pins_features(self):
        params = make(n=100, p=0.5, q=0.2, mu1=-1.0, mu2=2.0, sigma2=1e-30)
        feats = sample_features(params, canonical_labels(100))
        assert np.allclose(feats.matrix[:50], -1.0, atol=1e-10)
        assert np.allclose(feats.matrix[50:], 2.0, atol=1e-10)
        assert feats.class_means == (-1.0, 2.0)

    def test_class_mean_within_standard_error(self, fig6_params):
        feats = sample_features(fig6_params, canonical_labels(2000), 1)
        m1 = feats.matrix[:1000].mean()
        assert abs(m1 - 1.0) <= 3.0 / math.sqrt(1000)

    def test_dimensions_uncorrelated(self):
        params = make(n=2000, p=0.5, q=0.2, mu1=0.0, mu2=1.0, d=3, seed=3)
        feats = sample_features(params, canonical_labels(2000))
        block = feats.matrix[:1000]
        cov = np.cov(block.T)
        off = cov[~np.eye(3, dtype=bool)]
        assert np.abs(off).max() <= 5.0 / math.sqrt(1000)

    def test_deterministic_and_label_length_checked(self, fig6_params):
        labels = canonical_labels(2000)
        f1 = sample_features(fig6_params, labels, 2)
        f2 = sample_features(fig6_params, labels, 2)
        assert np.array_equal(f1.matrix, f2.matrix)
        with pytest.raises(ValueError, match="labels length"):
            sample_features(fig6_params, labels[:10], 2)


class TestRegime:
    def test_fig6_a_parameter(self, fig6_params):
        report = check_regime(fig6_params)
        assert report.a_parameter == pytest.approx(3.00, abs=0.01)
        assert report.homophilous

    def test_p_equal_q_not_homophilous(self):
        params = make(n=2000, p=0.0038, q=0.0038, mu1=1.0, mu2=1.5)
        report = check_regime(params)
        assert not report.homophilous
        assert not report.regime_ok

    def test_sparse_graph_out_of_regime(self):
        params = make(n=100, p=0.01, q=0.005, mu1=0.0, mu2=1.0)
        assert not check_regime(params).regime_ok

    def test_dense_graph_in_regime(self):
        params = make(n=2000, p=0.05, q=0.02, mu1=0.0, mu2=1.0)
        assert check_regime(params).regime_ok


class TestSpectrum:
    def test_fig6_eigenvalues(self, fig6_params):
        lam1, lam2 = expected_operator_spectrum(fig6_params)
        assert lam1 == 1.0
        assert lam2 == pytest.approx(0.5, abs=1e-12)

    def test_p_equal_q_second_eigenvalue_zero(self):
        params = make(n=100, p=0.3, q=0.3, mu1=0.0, mu2=1.0)
        assert expected_operator_spectrum(params)[1] == 0.0

    def test_tiny_q_second_eigenvalue_near_one(self):
        params = make(n=100, p=0.5, q=1e-9, mu1=0.0, mu2=1.0)
        assert expected_operator_spectrum(params)[1] == pytest.approx(1.0, abs=1e-8)

    def test_matches_mean_gap_contraction(self, fig6_params):
        lam2 = expected_operator_spectrum(fig6_params)[1]
        ratio = mean_gap(fig6_params, 1) / mean_gap(fig6_params, 0)
        assert lam2 == pytest.approx(ratio, rel=1e-12)
