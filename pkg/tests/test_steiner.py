from __future__ import annotations

import random

import pytest

from danet.evaluate import bfs_distances, expected_path_length
from danet.huffman import build_huffman
from danet.model import DemandGraph, Distribution, conditional, normalize
from danet.steiner import (
    sni_node_bound,
    steiner_node_insertion,
    total_host_nodes,
    tree_internal_count,
)
from helpers import random_demand_graph

TRIANGLE = normalize({(0, 1): 1, (1, 2): 1, (0, 2): 1})
STAR4 = normalize({(0, i): 1 for i in range(1, 5)})


class TestExamples:
    def test_single_edge_collapses(self):
        g = normalize({(0, 1): 1})
        res = steiner_node_insertion(g, 3)
        assert res.host.edges == ((0, 1),)
        assert res.steiner_count == 0
        assert expected_path_length(g, res.host) == 1.0

    def test_triangle_collapses(self):
        res = steiner_node_insertion(TRIANGLE, 3)
        assert res.host.edges == ((0, 1), (0, 2), (1, 2))
        assert res.steiner_count == 0
        assert expected_path_length(TRIANGLE, res.host) == 1.0

    def test_star4(self):
        res = steiner_node_insertion(STAR4, 3)
        assert res.host.n_total == 7
        assert res.steiner_count == 2
        assert res.host.max_degree == 3
        assert expected_path_length(STAR4, res.host) == pytest.approx(2.0)

    def test_small_delta_rejected(self):
        with pytest.raises(ValueError):
            steiner_node_insertion(STAR4, 2)

    def test_isolated_node_rejected(self):
        g = DemandGraph(n=3, edges={(0, 1): 1.0})
        with pytest.raises(ValueError, match="no demand"):
            steiner_node_insertion(g, 3)


class TestNodeBound:
    def test_star4_delta3(self):
        assert sni_node_bound(STAR4, 3) == 5 + 2 * 4 == 13
        assert steiner_node_insertion(STAR4, 3).host.n_total <= 13

    def test_single_edge_delta4(self):
        g = normalize({(0, 1): 1})
        assert sni_node_bound(g, 4) == 2
        assert steiner_node_insertion(g, 4).host.n_total == 2

    def test_min_degree_two_tightens(self):
        # triangle at delta=5: (1 - 2/3)*3 + (2/3)*3 = 3
        assert sni_node_bound(TRIANGLE, 5) == 3
        assert steiner_node_insertion(TRIANGLE, 5).host.n_total == 3

    def test_counts_only_active_nodes(self):
        g = DemandGraph(n=4, edges={(0, 1): 0.5, (1, 2): 0.5})
        assert sni_node_bound(g, 3) == 3 + 2 * 2


class TestGuarantees:
    def test_random_instances(self, corpus):
        rng = random.Random(99)
        for g in corpus[:12]:
            delta = rng.choice([3, 4, 8, 16])
            res = steiner_node_insertion(g, delta)
            assert res.host.max_degree <= delta
            assert res.host.n_total <= sni_node_bound(g, delta)
            epl = expected_path_length(g, res.host)
            assert epl <= res.entropy_cost_bound + 1e-6

    def test_distance_bounded_by_splice_route(self):
        # the constructed route between a demand pair has length
        # depth_v(u) + depth_u(v) - 1; other pairs' splices can shortcut it,
        # so as a graph distance it is an upper bound
        rng = random.Random(100)
        for _ in range(10):
            g = random_demand_graph(rng, rng.randint(3, 25), rng.randint(0, 20))
            delta = rng.choice([3, 4, 6])
            res = steiner_node_insertion(g, delta)
            trees = {v: build_huffman(conditional(g, v), delta - 1) for v in range(g.n)}
            for u in range(g.n):
                dist = bfs_distances(res.host.adjacency, u, res.host.n_total)
                for v, _ in g.adjacency[u]:
                    route = (
                        trees[u].depth_of_symbol(v) + trees[v].depth_of_symbol(u) - 1
                    )
                    assert 1 <= dist[v] <= route

    def test_distance_identity_exact_on_stars(self):
        # stars admit no shortcut: the center tree is the only non-trivial one
        for leaves in (3, 4, 9, 17):
            g = normalize({(0, i): i for i in range(1, leaves + 1)})
            for delta in (3, 4):
                res = steiner_node_insertion(g, delta)
                tree = build_huffman(conditional(g, 0), delta - 1)
                dist = bfs_distances(res.host.adjacency, 0, res.host.n_total)
                for v in range(1, leaves + 1):
                    assert dist[v] == tree.depth_of_symbol(v) + 1 - 1

    def test_deterministic(self):
        rng = random.Random(101)
        g = random_demand_graph(rng, 30, 40)
        assert (
            steiner_node_insertion(g, 4).host.edges
            == steiner_node_insertion(g, 4).host.edges
        )

    def test_total_host_nodes_matches_build(self):
        rng = random.Random(102)
        for _ in range(10):
            g = random_demand_graph(rng, rng.randint(2, 20), rng.randint(0, 15))
            delta = rng.choice([3, 5])
            assert total_host_nodes(g, delta) == steiner_node_insertion(g, delta).host.n_total

    def test_closed_form_internal_count_matches_trees(self):
        rng = random.Random(105)
        for _ in range(200):
            k = rng.randint(1, 50)
            arity = rng.randint(2, 7)
            bonus = rng.random() < 0.5
            probs = [rng.random() + 1e-9 for _ in range(k)]
            total = sum(probs)
            dist = Distribution(tuple((i, p / total) for i, p in enumerate(probs)))
            tree = build_huffman(dist, arity, root_extra_child=bonus)
            assert tree.internal_count() == tree_internal_count(
                k, arity, root_extra_child=bonus
            )


class TestRootExtraChild:
    def test_identity_on_compliant_graphs(self):
        rng = random.Random(103)
        for _ in range(10):
            g = random_demand_graph(rng, rng.randint(3, 20), rng.randint(0, 6))
            delta = max(3, max(g.degree(v) for v in range(g.n)))
            res = steiner_node_insertion(g, delta, root_extra_child=True)
            assert res.steiner_count == 0
            assert res.host.edges == tuple(sorted(g.edges))

    def test_still_respects_bound(self):
        rng = random.Random(104)
        for _ in range(10):
            g = random_demand_graph(rng, rng.randint(4, 25), rng.randint(5, 30))
            delta = rng.choice([3, 4])
            res = steiner_node_insertion(g, delta, root_extra_child=True)
            assert res.host.max_degree <= delta
