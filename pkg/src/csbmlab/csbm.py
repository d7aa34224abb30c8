"""Two-class contextual stochastic block model: parameters, sampling, and
the population operator structure."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .seeding import FEATURE_STREAM, GRAPH_STREAM, rng_for

_MAX_SEED = (1 << 64) - 1


@dataclass(frozen=True)
class CsbmParams:
    """Full generative specification of a CSBM instance.

    Two classes of n_nodes/2 nodes each; same-class pairs are connected with
    probability p_intra, cross-class pairs with q_inter; a node of class i
    carries feature_dim independent Normal(mu_i, sigma2) features.
    """

    n_nodes: int
    p_intra: float
    q_inter: float
    mu1: float
    mu2: float
    sigma2: float
    feature_dim: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_nodes <= 0 or self.n_nodes % 2 != 0:
            raise ValueError(f"n_nodes must be a positive even integer, got {self.n_nodes}")
        if not (0.0 < self.q_inter <= self.p_intra <= 1.0):
            raise ValueError(
                f"edge probabilities must satisfy 0 < q_inter <= p_intra <= 1, "
                f"got p_intra={self.p_intra}, q_inter={self.q_inter}"
            )
        if self.sigma2 <= 0.0:
            raise ValueError(f"sigma2 must be positive, got {self.sigma2}")
        if not self.mu1 < self.mu2:
            raise ValueError(f"mu1 < mu2 required, got mu1={self.mu1}, mu2={self.mu2}")
        if self.feature_dim < 1:
            raise ValueError(f"feature_dim must be >= 1, got {self.feature_dim}")
        if not (0 <= self.seed <= _MAX_SEED):
            raise ValueError("seed must fit in 64 unsigned bits")

    @property
    def half(self) -> int:
        return self.n_nodes // 2

    @property
    def mean_gap0(self) -> float:
        return self.mu2 - self.mu1

    @property
    def contraction_ratio(self) -> float:
        """Per-convolution mean-gap ratio (p-q)/(p+q)."""
        return (self.p_intra - self.q_inter) / (self.p_intra + self.q_inter)


@dataclass(frozen=True)
class Graph:
    """Undirected graph: sparse 0/1 adjacency, per-node class labels in 1..C,
    and the degree vector.  Immutable after construction."""

    adjacency: sp.csr_matrix
    labels: np.ndarray
    degree_vector: np.ndarray

    def __post_init__(self) -> None:
        n = self.adjacency.shape[0]
        if self.adjacency.shape != (n, n):
            raise ValueError("adjacency must be square")
        if len(self.labels) != n or len(self.degree_vector) != n:
            raise ValueError("labels/degree_vector length must match adjacency")

    @property
    def n_nodes(self) -> int:
        return self.adjacency.shape[0]

    @property
    def n_classes(self) -> int:
        return int(self.labels.max()) if self.n_nodes else 0

    def isolated_nodes(self) -> np.ndarray:
        """Indices of degree-0 nodes (propagation operators reject these)."""
        return np.flatnonzero(self.degree_vector == 0)

    @classmethod
    def from_adjacency(cls, adjacency: sp.spmatrix, labels: np.ndarray) -> "Graph":
        adj = sp.csr_matrix(adjacency, dtype=np.float64)
        adj.setdiag(0)
        adj.eliminate_zeros()
        degrees = np.asarray(adj.sum(axis=1)).ravel().astype(np.int64)
        labels = np.asarray(labels, dtype=np.int64)
        labels.setflags(write=False)
        degrees.setflags(write=False)
        return cls(adjacency=adj, labels=labels, degree_vector=degrees)


@dataclass(frozen=True)
class Features:
    """N x d node feature matrix; class_means holds the generative (mu1, mu2)
    when sampled and is None for ingested features."""

    matrix: np.ndarray
    class_means: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if self.matrix.ndim != 2:
            raise ValueError("feature matrix must be 2-d (N x d)")

    @property
    def n_nodes(self) -> int:
        return self.matrix.shape[0]

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class RegimeReport:
    """Density diagnostics for the connectivity assumption Np, Nq >= log N
    (natural log) and the homophily condition p > q."""

    a_parameter: float
    inter_density_ratio: float
    homophilous: bool
    regime_ok: bool


def canonical_labels(n_nodes: int) -> np.ndarray:
    """Class 1 on indices 0..N/2-1, class 2 on the rest."""
    half = n_nodes // 2
    labels = np.concatenate([np.ones(half, dtype=np.int64), np.full(n_nodes - half, 2, dtype=np.int64)])
    labels.setflags(write=False)
    return labels


def sample_graph(params: CsbmParams, trial_index: int = 0) -> Graph:
    """Sample one CSBM adjacency.

    Each intra-class pair is an edge independently with probability p, each
    inter-class pair with probability q.  Deterministic in
    (params.seed, trial_index); draw order is fixed (class-1 block, class-2
    block, inter block).
    """
    rng = rng_for(params.seed, trial_index, GRAPH_STREAM)
    h = params.half
    upper1 = np.triu(rng.random((h, h)) < params.p_intra, k=1)
    upper2 = np.triu(rng.random((h, h)) < params.p_intra, k=1)
    inter = rng.random((h, h)) < params.q_inter

    dense = np.zeros((params.n_nodes, params.n_nodes), dtype=bool)
    dense[:h, :h] = upper1 | upper1.T
    dense[h:, h:] = upper2 | upper2.T
    dense[:h, h:] = inter
    dense[h:, :h] = inter.T
    adj = sp.csr_matrix(dense.astype(np.float64))
    return Graph.from_adjacency(adj, canonical_labels(params.n_nodes))


def sample_features(params: CsbmParams, labels: np.ndarray, trial_index: int = 0) -> Features:
    """Sample Gaussian node features: node v of class i gets feature_dim
    independent Normal(mu_i, sigma2) draws.  Deterministic in
    (params.seed, trial_index), independent of the graph stream."""
    labels = np.asarray(labels)
    if len(labels) != params.n_nodes:
        raise ValueError(f"labels length {len(labels)} != n_nodes {params.n_nodes}")
    rng = rng_for(params.seed, trial_index, FEATURE_STREAM)
    sigma = math.sqrt(params.sigma2)
    means = np.where(labels[:, None] == 1, params.mu1, params.mu2)
    matrix = rng.normal(loc=0.0, scale=sigma, size=(params.n_nodes, params.feature_dim)) + means
    matrix.setflags(write=False)
    return Features(matrix=matrix, class_means=(params.mu1, params.mu2))


def sample_instance(params: CsbmParams, trial_index: int = 0) -> tuple[Graph, Features]:
    """Graph and features of one trial (independent streams)."""
    graph = sample_graph(params, trial_index)
    return graph, sample_features(params, graph.labels, trial_index)


def check_regime(params: CsbmParams) -> RegimeReport:
    """Report a = Np/log N and whether the density/homophily assumptions hold
    (Np >= log N, Nq >= log N, p > q; natural log)."""
    log_n = math.log(params.n_nodes)
    a = params.n_nodes * params.p_intra / log_n
    q_ratio = params.n_nodes * params.q_inter / log_n
    homophilous = params.p_intra > params.q_inter
    return RegimeReport(
        a_parameter=a,
        inter_density_ratio=q_ratio,
        homophilous=homophilous,
        regime_ok=bool(a >= 1.0 and q_ratio >= 1.0 and homophilous),
    )


def expected_operator_spectrum(params: CsbmParams) -> tuple[float, float]:
    """Nonzero eigenvalues of the population random-walk operator.

    The expected adjacency has rank 2 with eigenvalues N(p+q)/2 and N(p-q)/2,
    and the expected degree matrix is (N/2)(p+q) I, so the population
    random-walk operator has eigenvalues 1 and (p-q)/(p+q).
    """
    return 1.0, params.contraction_ratio
