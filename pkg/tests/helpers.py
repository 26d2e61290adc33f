"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the production code paths: prefix-tree
optima come from depth-sequence enumeration under the Kraft inequality, and
reference EPLs from a Floyd-Warshall all-pairs pass.
"""

from __future__ import annotations

import math
import random

from danet.evaluate import HostGraph
from danet.model import DemandGraph, Distribution, normalize


def random_demand_graph(rng: random.Random, n: int, extra: int, skew: float = 2.0) -> DemandGraph:
    """Connected demand graph: a random spanning path plus ``extra`` chords,
    with heavy-tailed weights.  Every node has positive marginal."""
    perm = list(range(n))
    rng.shuffle(perm)
    weights: dict[tuple[int, int], float] = {}

    def put(u: int, v: int) -> None:
        e = (u, v) if u < v else (v, u)
        if e not in weights:
            weights[e] = rng.random() ** skew + 1e-6

    for i in range(n - 1):
        put(perm[i], perm[i + 1])
    attempts = 0
    added = 0
    while added < extra and attempts < 20 * extra + 50:
        attempts += 1
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v and (min(u, v), max(u, v)) not in weights:
            put(u, v)
            added += 1
    return normalize(weights, n=n)


def random_distribution(rng: random.Random, k: int) -> Distribution:
    raw = [rng.random() + 1e-9 for _ in range(k)]
    total = sum(raw)
    return Distribution(tuple((i, w / total) for i, w in enumerate(raw)))


def core_periphery_instance(n: int, seed: int = 0) -> DemandGraph:
    """Near-clique core (~2% of nodes) with heavy weights; every remaining
    node hangs off one core node by a single light edge."""
    rng = random.Random(seed)
    c = max(3, round(0.02 * n))
    weights: dict[tuple[int, int], float] = {}
    for u in range(c):
        for v in range(u + 1, c):
            if rng.random() < 0.95:
                weights[(u, v)] = 100.0 + 900.0 * rng.random()
    for p in range(c, n):
        anchor = (p - c) % c
        weights[(anchor, p)] = 1.0 + rng.random()
    return normalize(weights, n=n)


def skewed_instance(n: int, seed: int = 0) -> DemandGraph:
    """Hub-heavy demand with Pareto weights: a few hubs talk to large random
    node subsets (degrees well above typical bounds), the rest is sparse."""
    rng = random.Random(seed)
    weights: dict[tuple[int, int], float] = {}

    def put(u: int, v: int, w: float) -> None:
        if u != v:
            e = (u, v) if u < v else (v, u)
            weights[e] = weights.get(e, 0.0) + w

    hubs = rng.sample(range(n), max(3, n // 40))
    for hub in hubs:
        fan = rng.sample(range(n), rng.randint(n // 4, n // 2))
        for v in fan:
            put(hub, v, rng.paretovariate(1.2))
    perm = list(range(n))
    rng.shuffle(perm)
    for i in range(n - 1):  # spanning path keeps the instance connected
        put(perm[i], perm[i + 1], rng.paretovariate(1.5))
    for _ in range(2 * n):
        put(rng.randrange(n), rng.randrange(n), rng.paretovariate(1.5))
    return normalize(weights, n=n)


# ---------------------------------------------------------------------------
# independent oracles


def kraft_optimal_cost(dist: Distribution, d: int) -> float:
    """Exhaustive optimum over prefix trees: minimize sum p_i * depth_i over
    all nondecreasing depth sequences satisfying the Kraft inequality, with
    depths paired against probabilities in opposite sorted order."""
    k = len(dist)
    probs = sorted(dist.probs, reverse=True)
    max_depth = k  # an optimal prefix tree never needs deeper leaves
    best = math.inf

    def rec(i: int, min_depth: int, budget: float, depths: list[int]) -> None:
        nonlocal best
        if i == k:
            cost = math.fsum(p * ell for p, ell in zip(probs, depths))
            if cost < best:
                best = cost
            return
        for ell in range(min_depth, max_depth + 1):
            need = d ** (-ell)
            if need > budget + 1e-12:
                continue
            depths.append(ell)
            rec(i + 1, ell, budget - need, depths)
            depths.pop()

    rec(0, 1, 1.0, [])
    return best


def floyd_warshall_epl(g: DemandGraph, host: HostGraph) -> float:
    """Reference EPL via an all-pairs Floyd-Warshall pass."""
    n = host.n_total
    inf = math.inf
    dist = [[0.0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v in host.edges:
        dist[u][v] = dist[v][u] = 1.0
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == inf:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    terms = []
    for (u, v), w in g.sorted_edges:
        if dist[u][v] == inf:
            return math.inf
        terms.append(w * dist[u][v])
    return math.fsum(terms)


def entropy_reference(probs, d: int) -> float:
    """Direct base-d entropy, written independently of the library."""
    return sum(p * math.log(1.0 / p, d) for p in probs if p > 0)


def naive_greedy_deletion_edges(g: DemandGraph, delta: int):
    """Greedy edge deletion without the spanning-tree speed-up: full
    connectivity recheck per candidate.  Returns the surviving edge set."""
    adj: dict[int, set[int]] = {v: set() for v in range(g.n)}
    for (u, v), _ in g.sorted_edges:
        adj[u].add(v)
        adj[v].add(u)

    def connected_without(u: int, v: int) -> bool:
        # removing {u,v} can only split u's component, so one BFS suffices
        adj[u].discard(v)
        adj[v].discard(u)
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        adj[u].add(v)
        adj[v].add(u)
        return v in seen

    for (u, v) in [e for e, _ in sorted(g.sorted_edges, key=lambda ew: (ew[1], ew[0]))]:
        if len(adj[u]) <= delta and len(adj[v]) <= delta:
            continue
        if connected_without(u, v):
            adj[u].discard(v)
            adj[v].discard(u)
    return {(u, v) for u in adj for v in adj[u] if u < v}
