"""Structural graph checks (triangles, bipartiteness, BFS neighborhood
growth) and small named graphs used by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .csbm import Graph


def from_edges(n_nodes: int, edges: list[tuple[int, int]], labels: np.ndarray | None = None) -> Graph:
    """Build an undirected graph from an edge list; labels default to all 1."""
    if labels is None:
        labels = np.ones(n_nodes, dtype=np.int64)
    if edges:
        rows = np.array([e[0] for e in edges] + [e[1] for e in edges])
        cols = np.array([e[1] for e in edges] + [e[0] for e in edges])
        adj = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n_nodes, n_nodes))
        adj.data[:] = 1.0
    else:
        adj = sp.csr_matrix((n_nodes, n_nodes), dtype=np.float64)
    return Graph.from_adjacency(adj, labels)


def star_graph(n_leaves: int) -> Graph:
    """Center at index 0 joined to n_leaves leaves."""
    return from_edges(n_leaves + 1, [(0, i) for i in range(1, n_leaves + 1)])


def cycle_graph(n_nodes: int) -> Graph:
    return from_edges(n_nodes, [(i, (i + 1) % n_nodes) for i in range(n_nodes)])


def path_graph(n_nodes: int) -> Graph:
    return from_edges(n_nodes, [(i, i + 1) for i in range(n_nodes - 1)])


def complete_graph(n_nodes: int) -> Graph:
    return from_edges(n_nodes, [(i, j) for i in range(n_nodes) for j in range(i + 1, n_nodes)])


def circulant_graph(n_nodes: int, offsets: tuple[int, ...] = (1, 2)) -> Graph:
    """Regular circulant graph: i ~ i +/- s for each offset s.  With offsets
    (1, 2) it contains triangles, hence is non-bipartite."""
    edges = [(i, (i + s) % n_nodes) for i in range(n_nodes) for s in offsets]
    return from_edges(n_nodes, edges)


def triangle_with_pendant() -> Graph:
    """Triangle 0-1-2 plus a pendant node 3 attached to 0; degrees (3,2,2,1),
    stationary squared norm 18/64 = 0.28125."""
    return from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


def random_connected_graph(rng: np.random.Generator, max_nodes: int = 50, min_nodes: int = 4) -> Graph:
    """Uniformish small connected test graph: G(n, p) with p above the
    connectivity threshold, resampled until connected."""
    n = int(rng.integers(min_nodes, max_nodes + 1))
    p = min(1.0, 2.0 * np.log(max(n, 2)) / n)
    while True:
        upper = np.triu(rng.random((n, n)) < p, k=1)
        adj = sp.csr_matrix((upper | upper.T).astype(np.float64))
        graph = Graph.from_adjacency(adj, np.ones(n, dtype=np.int64))
        if is_connected(graph):
            return graph


def is_connected(graph: Graph) -> bool:
    if graph.n_nodes <= 1:
        return True
    n_comp = csgraph.connected_components(graph.adjacency, directed=False, return_labels=False)
    return int(n_comp) == 1


def contains_triangle(graph: Graph) -> bool:
    """True when some edge closes into a triangle: (A @ A) and A share a
    positive entry."""
    adj = graph.adjacency
    if adj.nnz == 0:
        return False
    common = (adj @ adj).multiply(adj)
    return bool(common.sum() > 0)


def is_bipartite(graph: Graph) -> bool:
    """Two-colorability via parity BFS over every component."""
    n = graph.n_nodes
    indptr, indices = graph.adjacency.indptr, graph.adjacency.indices
    color = np.full(n, -1, dtype=np.int8)
    for start in range(n):
        if color[start] != -1:
            continue
        color[start] = 0
        frontier = [start]
        while frontier:
            nxt: list[int] = []
            for u in frontier:
                cu = color[u]
                for v in indices[indptr[u] : indptr[u + 1]]:
                    if color[v] == -1:
                        color[v] = 1 - cu
                        nxt.append(int(v))
                    elif color[v] == cu:
                        return False
            frontier = nxt
    return True


def bfs_distances(graph: Graph, root: int) -> np.ndarray:
    """Hop distances from root; unreachable nodes get -1."""
    n = graph.n_nodes
    indptr, indices = graph.adjacency.indptr, graph.adjacency.indices
    dist = np.full(n, -1, dtype=np.int64)
    dist[root] = 0
    frontier = [root]
    level = 0
    while frontier:
        level += 1
        nxt: list[int] = []
        for u in frontier:
            for v in indices[indptr[u] : indptr[u + 1]]:
                if dist[v] == -1:
                    dist[v] = level
                    nxt.append(int(v))
        frontier = nxt
    return dist


@dataclass(frozen=True)
class NeighborhoodProfile:
    """Per-distance shell and ball sizes aggregated over BFS roots.

    mean_shell[k] / max_shell[k] summarize |Gamma_k| (nodes at distance
    exactly k); mean_ball / max_ball summarize |N_k| (distance <= k).
    """

    max_k: int
    mean_shell: np.ndarray
    max_shell: np.ndarray
    mean_ball: np.ndarray
    max_ball: np.ndarray
    n_roots: int
    connected: bool


def neighborhood_profile(
    graph: Graph,
    max_k: int,
    root_sample: int = 100,
    sample_above: int = 2000,
    seed: int = 0,
) -> NeighborhoodProfile:
    """Exact BFS shell sizes from every node, or from a seeded uniform sample
    of root_sample roots when the graph exceeds sample_above nodes."""
    n = graph.n_nodes
    if n > sample_above:
        rng = np.random.Generator(np.random.PCG64(seed))
        roots = np.sort(rng.choice(n, size=min(root_sample, n), replace=False))
    else:
        roots = np.arange(n)
    shells = np.zeros((len(roots), max_k + 1), dtype=np.int64)
    for i, root in enumerate(roots):
        dist = bfs_distances(graph, int(root))
        reach = dist[dist >= 0]
        counts = np.bincount(np.minimum(reach, max_k + 1), minlength=max_k + 2)
        shells[i] = counts[: max_k + 1]
    balls = np.cumsum(shells, axis=1)
    return NeighborhoodProfile(
        max_k=max_k,
        mean_shell=shells.mean(axis=0),
        max_shell=shells.max(axis=0),
        mean_ball=balls.mean(axis=0),
        max_ball=balls.max(axis=0),
        n_roots=len(roots),
        connected=is_connected(graph),
    )
