import numpy as np
import pytest

from csbmlab import sample_graph
from csbmlab.structure import (
    bfs_distances,
    circulant_graph,
    complete_graph,
    contains_triangle,
    cycle_graph,
    from_edges,
    is_bipartite,
    is_connected,
    neighborhood_profile,
    path_graph,
    random_connected_graph,
    star_graph,
    triangle_with_pendant,
)


class TestBuilders:
    def test_star(self):
        graph = star_graph(3)
        assert np.array_equal(graph.degree_vector, [3, 1, 1, 1])

    def test_triangle_with_pendant_degrees(self):
        assert np.array_equal(triangle_with_pendant().degree_vector, [3, 2, 2, 1])

    def test_circulant_regular(self):
        graph = circulant_graph(10, (1, 2))
        assert (graph.degree_vector == 4).all()
        assert contains_triangle(graph)


class TestTriangleAndBipartite:
    def test_c4(self):
        graph = cycle_graph(4)
        assert not contains_triangle(graph)
        assert is_bipartite(graph)

    def test_k3(self):
        graph = complete_graph(3)
        assert contains_triangle(graph)
        assert not is_bipartite(graph)

    def test_odd_cycle_nonbipartite_no_triangle(self):
        graph = cycle_graph(5)
        assert not contains_triangle(graph)
        assert not is_bipartite(graph)

    def test_triangle_implies_nonbipartite_on_random_graphs(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            graph = random_connected_graph(rng, max_nodes=30)
            if contains_triangle(graph):
                assert not is_bipartite(graph)

    def test_empty_graph(self):
        graph = from_edges(3, [])
        assert not contains_triangle(graph)
        assert is_bipartite(graph)


class TestConnectivity:
    def test_connected(self):
        assert is_connected(path_graph(5))

    def test_disconnected(self):
        assert not is_connected(from_edges(4, [(0, 1), (2, 3)]))


class TestBfs:
    def test_path_distances(self):
        dist = bfs_distances(path_graph(3), 0)
        assert np.array_equal(dist, [0, 1, 2])

    def test_unreachable_marked(self):
        dist = bfs_distances(from_edges(3, [(0, 1)]), 0)
        assert np.array_equal(dist, [0, 1, -1])


class TestNeighborhoodProfile:
    def test_path_endpoint_shells(self):
        profile = neighborhood_profile(path_graph(3), 2)
        # shells from the endpoints are (1,1,1); from the middle (1,2,0)
        assert np.array_equal(profile.max_shell, [1, 2, 1])
        assert profile.mean_shell[0] == 1.0
        assert profile.connected

    def test_complete_graph_shells(self):
        profile = neighborhood_profile(complete_graph(5), 2)
        assert profile.max_shell[1] == 4
        assert profile.max_ball[1] == 5
        assert profile.max_shell[2] == 0

    def test_root_sampling_kicks_in(self, fig6_params):
        graph = sample_graph(fig6_params, 0)
        profile = neighborhood_profile(graph, 1, root_sample=50, sample_above=1000, seed=1)
        assert profile.n_roots == 50
        assert profile.max_ball[1] <= graph.degree_vector.max() + 1
