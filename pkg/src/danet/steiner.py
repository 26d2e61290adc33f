"""Constant-factor network design with Steiner nodes.

For each demand node a (delta-1)-ary Huffman tree over its conditional
distribution becomes a local routing tree; trees are spliced together by
replacing the two leaves of every demand pair with a single edge.  The result
respects the degree bound and has expected path length at most
sum_v p(v) * H_{delta-1}(p_v) + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .evaluate import HostGraph
from .huffman import HuffmanTree, build_huffman
from .model import DemandGraph, conditional, entropy_base_d


@dataclass(frozen=True)
class SniResult:
    host: HostGraph
    steiner_count: int
    entropy_cost_bound: float


def build_local_trees(
    g: DemandGraph, delta: int, *, root_extra_child: bool = False
) -> dict[int, HuffmanTree]:
    """Step 1: one (delta-1)-ary Huffman tree per demand node."""
    if delta < 3:
        raise ValueError("degree bound must be >= 3 (tree arity >= 2)")
    trees: dict[int, HuffmanTree] = {}
    for v in range(g.n):
        if g.marginals[v] <= 0.0:
            raise ValueError(f"node {v} has no demand; prune isolated nodes first")
        trees[v] = build_huffman(
            conditional(g, v), delta - 1, root_extra_child=root_extra_child
        )
    return trees


def steiner_node_insertion(
    g: DemandGraph, delta: int, *, root_extra_child: bool = False
) -> SniResult:
    """Build a bounded-degree host graph, adding Steiner nodes as needed.

    Steiner ids are allocated contiguously from g.n upward, per tree in
    ascending root id; demand edges are spliced in sorted order.  With
    ``root_extra_child`` each tree root may take one extra child, which makes
    the construction the identity on graphs that already meet the bound.
    """
    trees = build_local_trees(g, delta, root_extra_child=root_extra_child)

    node_id: dict[tuple[int, int], int] = {}  # (tree root, tree-local node) -> host id
    next_id = g.n
    for v in range(g.n):
        tree = trees[v]
        for local in tree.internal_nodes:
            if local == tree.root:
                node_id[(v, local)] = v
            else:
                node_id[(v, local)] = next_id
                next_id += 1

    edges: set[tuple[int, int]] = set()
    for v in range(g.n):
        for p, c in trees[v].internal_edges():
            a, b = node_id[(v, p)], node_id[(v, c)]
            edges.add((min(a, b), max(a, b)))

    for (u, v), _ in g.sorted_edges:
        pu = node_id[(u, trees[u].parent_of_symbol(v))]
        pv = node_id[(v, trees[v].parent_of_symbol(u))]
        splice = (min(pu, pv), max(pu, pv))
        assert splice not in edges, f"duplicate splice edge {splice}"
        edges.add(splice)

    host = HostGraph(
        n_total=next_id, n_original=g.n, delta=delta, edges=tuple(sorted(edges))
    )
    bound = (
        math.fsum(
            g.marginals[v] * entropy_base_d(conditional(g, v), delta - 1)
            for v in range(g.n)
        )
        + 1.0
    )
    return SniResult(host=host, steiner_count=next_id - g.n, entropy_cost_bound=bound)


def total_host_nodes(
    g: DemandGraph, delta: int, *, root_extra_child: bool = False
) -> int:
    """Exact node count of the host the insertion algorithm would build."""
    trees = build_local_trees(g, delta, root_extra_child=root_extra_child)
    return sum(t.internal_count() for t in trees.values())


def tree_internal_count(leaves: int, arity: int, *, root_extra_child: bool = False) -> int:
    """Internal-node count of the Huffman tree over a given leaf count.

    The count depends only on the leaf count (padding fixes the shape), which
    lets callers size hosts without building trees.
    """
    if leaves < 1:
        raise ValueError("need at least one leaf")
    if leaves == 1:
        return 1
    if root_extra_child:
        if leaves <= arity + 1:
            return 1
        padded = leaves + (2 - leaves) % (arity - 1)
        return 1 + (padded - (arity + 1)) // (arity - 1)
    padded = leaves + (1 - leaves) % (arity - 1)
    return (padded - 1) // (arity - 1)


def sni_node_bound(g: DemandGraph, delta: int) -> int:
    """Upper bound on the host node count, from the tree-size analysis.

    Counts only nodes with positive marginal.  For delta=3 the looser bound
    n + 2m applies; for delta >= 4 the bound tightens further when every
    demand node has degree >= 2.
    """
    if delta < 3:
        raise ValueError("degree bound must be >= 3")
    active = [v for v in range(g.n) if g.marginals[v] > 0.0]
    n = len(active)
    m = g.m
    if delta == 3:
        return n + 2 * m
    d = delta - 1
    min_deg = min(g.degree(v) for v in active)
    if min_deg >= 2:
        bound = (1 - Fraction(2, d - 1)) * n + Fraction(2, d - 1) * m
    else:
        bound = (1 - Fraction(1, d - 1)) * n + Fraction(2, d - 1) * m
    return math.floor(bound)
