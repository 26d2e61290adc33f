"""Host graphs and their expected path length under a demand graph."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .model import DemandGraph, Edge, canonical_edge

#: Above this many (source, node) pairs the evaluator switches from the pure
#: Python BFS to scipy's C implementation.
_SCIPY_CUTOFF = 50_000


@dataclass(frozen=True)
class HostGraph:
    """Simple undirected graph serving a demand graph.

    Nodes 0..n_original-1 are the demand nodes; ids >= n_original are Steiner
    nodes.  ``delta`` is the declared degree bound (violations are detected by
    :func:`validate_host`, not at construction).
    """

    n_total: int
    n_original: int
    delta: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n_original < 0 or self.n_total < self.n_original:
            raise ValueError("invalid node counts")
        canon = sorted(canonical_edge(u, v) for u, v in self.edges)
        for u, v in canon:
            if not (0 <= u < v < self.n_total):
                raise ValueError(f"edge ({u},{v}) out of range")
        if len(set(canon)) != len(canon):
            raise ValueError("parallel edge in host graph")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def steiner_count(self) -> int:
        return self.n_total - self.n_original

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n_total)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def max_degree(self) -> int:
        if self.n_total == 0:
            return 0
        return max(len(a) for a in self.adjacency)


@dataclass(frozen=True)
class ValidationReport:
    max_degree: int
    degree_bound_ok: bool
    connected_for_demand: bool
    steiner_count: int


def bfs_distances(adj, source: int, n: int) -> list[int]:
    """Unweighted single-source distances; -1 marks unreachable nodes."""
    dist = [-1] * n
    dist[source] = 0
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = d
                    nxt.append(v)
        frontier = nxt
    return dist


def _demand_by_source(g: DemandGraph):
    by_src: dict[int, list[tuple[int, float]]] = {}
    for (u, v), w in g.sorted_edges:
        by_src.setdefault(u, []).append((v, w))
    return by_src


def expected_path_length(g: DemandGraph, host: HostGraph) -> float:
    """Sum of p({u,v}) * d_host(u,v) over demand pairs.

    Returns ``math.inf`` when some positive-demand pair is disconnected in the
    host.  Contributions are accumulated in sorted demand-edge order so the
    result is deterministic and independent of the BFS backend.
    """
    if host.n_original != g.n:
        raise ValueError(
            f"host has {host.n_original} demand nodes, demand graph has {g.n}"
        )
    by_src = _demand_by_source(g)
    sources = sorted(by_src)
    terms: list[float] = []

    if len(sources) * host.n_total <= _SCIPY_CUTOFF:
        adj = host.adjacency
        for s in sources:
            dist = bfs_distances(adj, s, host.n_total)
            for v, w in by_src[s]:
                if dist[v] < 0:
                    return math.inf
                terms.append(w * dist[v])
    else:
        dist_rows = _scipy_distances(host, sources)
        for i, s in enumerate(sources):
            row = dist_rows[i]
            for v, w in by_src[s]:
                d = row[v]
                if math.isinf(d):
                    return math.inf
                terms.append(w * d)
    return math.fsum(terms)


def _scipy_distances(host: HostGraph, sources: list[int]):
    import numpy as np
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import dijkstra

    m = len(host.edges)
    rows = np.empty(2 * m, dtype=np.int32)
    cols = np.empty(2 * m, dtype=np.int32)
    for i, (u, v) in enumerate(host.edges):
        rows[2 * i], cols[2 * i] = u, v
        rows[2 * i + 1], cols[2 * i + 1] = v, u
    data = np.ones(2 * m, dtype=np.int8)
    graph = csr_matrix((data, (rows, cols)), shape=(host.n_total, host.n_total))
    return dijkstra(graph, directed=False, unweighted=True, indices=sources)


def connected_for_demand(host: HostGraph, g: DemandGraph) -> bool:
    """True when every positive-demand pair lies in one host component."""
    parent = list(range(host.n_total))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in host.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return all(find(u) == find(v) for (u, v), _ in g.sorted_edges)


def validate_host(host: HostGraph, delta: int, g: DemandGraph) -> ValidationReport:
    """Report observed degree bound, demand connectivity and Steiner count."""
    maxdeg = host.max_degree
    return ValidationReport(
        max_degree=maxdeg,
        degree_bound_ok=maxdeg <= delta,
        connected_for_demand=connected_for_demand(host, g),
        steiner_count=host.steiner_count,
    )
