"""Optimal d-ary prefix trees built by Huffman merging.

Supports any arity d >= 2 via the usual zero-weight padding trick, plus a
variant where the root may take one extra child (useful when the root of the
tree is a graph node without a parent edge).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .model import Distribution


@dataclass
class HuffmanTree:
    """A rooted prefix tree whose leaves carry symbols.

    Node ids are dense: real leaves first (in symbol order), then padding
    slots, then merged internal nodes in creation order.  Padding leaves are
    pruned from ``children`` and never appear in the symbol maps.
    """

    arity: int
    root: int
    parent: list[int]
    children: list[list[int]]
    leaf_of_symbol: dict[int, int]
    symbol_of_leaf: dict[int, int]
    padded_leaf_count: int
    root_extra_child: bool = False
    depths: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.depths:
            depths = [-1] * len(self.parent)
            depths[self.root] = 0
            stack = [self.root]
            while stack:
                node = stack.pop()
                for c in self.children[node]:
                    depths[c] = depths[node] + 1
                    stack.append(c)
            self.depths = depths

    def depth_of_symbol(self, sym: int) -> int:
        return self.depths[self.leaf_of_symbol[sym]]

    def parent_of_symbol(self, sym: int) -> int:
        return self.parent[self.leaf_of_symbol[sym]]

    def is_leaf(self, node: int) -> bool:
        return node in self.symbol_of_leaf

    @property
    def internal_nodes(self) -> list[int]:
        """All non-leaf nodes reachable from the root, root first."""
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node not in self.symbol_of_leaf:
                out.append(node)
                stack.extend(reversed(self.children[node]))
        return out

    def internal_count(self) -> int:
        return len(self.internal_nodes)

    def internal_edges(self) -> list[tuple[int, int]]:
        """(parent, child) pairs where the child is itself internal."""
        return [
            (node, c)
            for node in self.internal_nodes
            for c in self.children[node]
            if c not in self.symbol_of_leaf
        ]


def _padding(k: int, arity: int, root_extra_child: bool) -> int:
    if root_extra_child:
        if k <= arity + 1:
            return 0
        return (2 - k) % (arity - 1)
    return (1 - k) % (arity - 1)


def build_huffman(dist: Distribution, arity: int, *, root_extra_child: bool = False) -> HuffmanTree:
    """Build an optimal prefix tree of the given arity over ``dist``.

    Merge tie-breaking is deterministic: among equal weights the earliest
    created node wins, which for leaves means the lowest symbol id.  A
    single-symbol distribution yields a root with one leaf at depth 1.
    """
    if arity < 2:
        raise ValueError("arity must be >= 2")
    k = len(dist)
    if k == 0:
        raise ValueError("empty distribution")

    weights: list[float] = []
    parent: list[int] = []
    children: list[list[int]] = []
    leaf_of_symbol: dict[int, int] = {}
    symbol_of_leaf: dict[int, int] = {}

    def new_node(w: float) -> int:
        node = len(weights)
        weights.append(w)
        parent.append(-1)
        children.append([])
        return node

    for sym, p in dist.entries:
        leaf = new_node(p)
        leaf_of_symbol[sym] = leaf
        symbol_of_leaf[leaf] = sym

    if k == 1:
        root = new_node(1.0)
        leaf = leaf_of_symbol[dist.entries[0][0]]
        children[root].append(leaf)
        parent[leaf] = root
        return HuffmanTree(
            arity=arity,
            root=root,
            parent=parent,
            children=children,
            leaf_of_symbol=leaf_of_symbol,
            symbol_of_leaf=symbol_of_leaf,
            padded_leaf_count=1,
            root_extra_child=root_extra_child,
        )

    pad = _padding(k, arity, root_extra_child)
    dummies = [new_node(0.0) for _ in range(pad)]

    heap: list[tuple[float, int]] = [(weights[i], i) for i in range(len(weights))]
    heapq.heapify(heap)

    def merge(count: int) -> None:
        group = [heapq.heappop(heap) for _ in range(count)]
        node = new_node(sum(w for w, _ in group))
        for _, child in group:
            children[node].append(child)
            parent[child] = node
        heapq.heappush(heap, (weights[node], node))

    if root_extra_child:
        while len(heap) > arity + 1:
            merge(arity)
        merge(len(heap))
    else:
        while len(heap) > 1:
            merge(arity)

    root = len(weights) - 1
    dummy_set = set(dummies)
    for node in range(len(children)):
        if dummy_set and any(c in dummy_set for c in children[node]):
            children[node] = [c for c in children[node] if c not in dummy_set]

    return HuffmanTree(
        arity=arity,
        root=root,
        parent=parent,
        children=children,
        leaf_of_symbol=leaf_of_symbol,
        symbol_of_leaf=symbol_of_leaf,
        padded_leaf_count=k + pad,
        root_extra_child=root_extra_child,
    )


def weighted_depth(tree: HuffmanTree, dist: Distribution) -> float:
    """Expected leaf depth sum(p_i * depth_i); symbols are summed in id order."""
    terms = []
    for sym, p in dist.entries:
        if sym not in tree.leaf_of_symbol:
            raise ValueError(f"symbol {sym} has no leaf in the tree")
        terms.append(p * tree.depth_of_symbol(sym))
    return math.fsum(terms)
