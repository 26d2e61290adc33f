"""Demand graphs, marginals/conditionals, entropy functions and the EPL lower bound.

A demand graph is a set of nodes 0..n-1 plus nonnegative weights on unordered
node pairs.  Once normalized, the weights form a probability distribution over
communicating pairs and drive every design algorithm in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

Edge = tuple[int, int]

#: Tolerance used when checking that probabilities sum to one.
SUM_TOL = 1e-9


def canonical_edge(u: int, v: int) -> Edge:
    """Return the unordered pair (min, max); self-loops are rejected."""
    if u == v:
        raise ValueError(f"self-loop on node {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Distribution:
    """Finite probability distribution over integer symbol ids.

    Entries are kept sorted by symbol id.  Zero-probability symbols are not
    representable; callers drop them before construction.
    """

    entries: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        entries = tuple(sorted((int(s), float(p)) for s, p in self.entries))
        object.__setattr__(self, "entries", entries)
        seen: set[int] = set()
        for sym, p in entries:
            if p <= 0.0:
                raise ValueError(f"non-positive probability {p} for symbol {sym}")
            if sym in seen:
                raise ValueError(f"duplicate symbol {sym}")
            seen.add(sym)
        if not entries:
            raise ValueError("empty distribution")
        total = math.fsum(p for _, p in entries)
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")

    @classmethod
    def from_probs(cls, probs: Iterable[float]) -> "Distribution":
        """Build a distribution over symbols 0..k-1, dropping zero entries."""
        return cls(tuple((i, p) for i, p in enumerate(probs) if p > 0.0))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def symbols(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.entries)

    @property
    def probs(self) -> tuple[float, ...]:
        return tuple(p for _, p in self.entries)


@dataclass(frozen=True)
class DemandGraph:
    """Nodes 0..n-1 with nonnegative weights on unordered pairs.

    Zero-weight pairs are treated as absent and dropped at construction.  When
    ``normalized`` is set the stored weights must sum to one.
    """

    n: int
    edges: Mapping[Edge, float]
    normalized: bool = True

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("node count must be positive")
        cleaned: dict[Edge, float] = {}
        for (u, v), w in self.edges.items():
            e = canonical_edge(int(u), int(v))
            if not (0 <= e[0] < e[1] < self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            w = float(w)
            if w < 0.0:
                raise ValueError(f"negative weight on edge {e}")
            if e in cleaned:
                raise ValueError(f"duplicate edge {e}")
            if w > 0.0:
                cleaned[e] = w
        if not cleaned:
            raise ValueError("empty demand")
        object.__setattr__(self, "edges", dict(sorted(cleaned.items())))
        if self.normalized:
            total = math.fsum(self.edges.values())
            if abs(total - 1.0) > SUM_TOL:
                raise ValueError(f"weights sum to {total!r}, expected 1")

    @cached_property
    def sorted_edges(self) -> tuple[tuple[Edge, float], ...]:
        return tuple(self.edges.items())

    @property
    def m(self) -> int:
        """Number of demand edges (pairs with positive weight)."""
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, float], ...], ...]:
        """Per-node sorted (neighbor, weight) lists."""
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for (u, v), w in self.sorted_edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def marginals(self) -> tuple[float, ...]:
        return tuple(
            math.fsum(w for _, w in self.adjacency[v]) for v in range(self.n)
        )

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


@dataclass(frozen=True)
class TraceStats:
    """Summary statistics of a demand graph."""

    n: int
    m: int
    min_degree: int
    avg_degree: Fraction
    max_degree: int
    entropy: float
    cond_entropy: float


def normalize(weights: Mapping[tuple[int, int], float], n: int | None = None) -> DemandGraph:
    """Scale raw pair weights so they sum to one.

    Pairs may be given in either orientation; opposite orientations of the
    same pair are merged by summation.  Raises ``ValueError`` on self-loops or
    if no positive weight remains.
    """
    merged: dict[Edge, float] = {}
    for (u, v), w in weights.items():
        e = canonical_edge(int(u), int(v))
        merged[e] = merged.get(e, 0.0) + float(w)
    positive = {e: w for e, w in sorted(merged.items()) if w > 0.0}
    if any(w < 0.0 for w in merged.values()):
        raise ValueError("negative weight in demand input")
    if not positive:
        raise ValueError("empty demand")
    if n is None:
        n = 1 + max(v for _, v in positive)
    total = math.fsum(positive.values())
    scaled = {e: w / total for e, w in positive.items()}
    return DemandGraph(n=n, edges=scaled, normalized=True)


def marginal(g: DemandGraph, v: int) -> float:
    """Total probability mass incident to node v."""
    if not (0 <= v < g.n):
        raise ValueError(f"node {v} out of range")
    return g.marginals[v]


def conditional(g: DemandGraph, v: int) -> Distribution:
    """Distribution of v's communication partner, given v participates."""
    pv = marginal(g, v)
    if pv <= 0.0:
        raise ValueError(f"no demand at node {v}")
    return Distribution(tuple((u, w / pv) for u, w in g.adjacency[v]))


def entropy_base_d(dist: Distribution, d: int) -> float:
    """Entropy of ``dist`` with logarithm base d."""
    if d < 2:
        raise ValueError("entropy base must be >= 2")
    return -math.fsum(p * math.log(p) for p in dist.probs) / math.log(d)


def conditional_entropy(g: DemandGraph, d: int) -> float:
    """(1/2) * sum_v p(v) * H_d(p_v), skipping zero-marginal nodes."""
    if d < 2:
        raise ValueError("entropy base must be >= 2")
    terms = [
        g.marginals[v] * entropy_base_d(conditional(g, v), d)
        for v in range(g.n)
        if g.marginals[v] > 0.0
    ]
    return 0.5 * math.fsum(terms)


def epl_lower_bound(g: DemandGraph, delta: int) -> float:
    """Entropy lower bound on the expected path length of any degree-``delta`` host.

    The raw bound can be negative on small instances; it is clamped at 1
    because every positive demand joins distinct nodes at distance >= 1.
    """
    if delta < 2:
        raise ValueError("degree bound must be >= 2")
    return max(1.0, conditional_entropy(g, delta + 1) - 1.0)


def degree_stats(g: DemandGraph) -> TraceStats:
    """Node/edge counts, degree extremes and entropies of a demand graph."""
    degrees = [g.degree(v) for v in range(g.n)]
    # edge ids are positional; only the probabilities matter for entropy
    edge_dist = Distribution(
        tuple((i, w) for i, (_, w) in enumerate(g.sorted_edges))
    )
    return TraceStats(
        n=g.n,
        m=g.m,
        min_degree=min(degrees),
        avg_degree=Fraction(2 * g.m, g.n),
        max_degree=max(degrees),
        entropy=entropy_base_d(edge_dist, 2),
        cond_entropy=conditional_entropy(g, 2),
    )
