"""Fixed-degree design heuristics.

All algorithms here strictly respect a user-supplied degree bound; failure is
a value, not an exception.  Randomized heuristics take an explicit 64-bit seed
and are bit-reproducible (``random.Random`` with the given seed).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .evaluate import HostGraph, connected_for_demand
from .model import DemandGraph, Edge, normalize
from .steiner import steiner_node_insertion, tree_internal_count


@dataclass(frozen=True)
class HeuristicOutcome:
    algorithm: str
    host: HostGraph | None
    seed: int | None
    failed: bool = False
    reason: str | None = None
    connected: bool | None = None


def _outcome(alg, g, host, seed, failed=False, reason=None) -> HeuristicOutcome:
    connected = connected_for_demand(host, g) if host is not None else None
    return HeuristicOutcome(
        algorithm=alg,
        host=host,
        seed=seed,
        failed=failed,
        reason=reason,
        connected=connected,
    )


# ---------------------------------------------------------------------------
# heavy-prefix split and the fixed-degree heuristic


def demand_sorted_edges(g: DemandGraph) -> list[Edge]:
    """Demand edges by descending weight, ties by lexicographic pair."""
    return [e for e, _ in sorted(g.sorted_edges, key=lambda ew: (-ew[1], ew[0]))]


def _induced_instance(g: DemandGraph, edges: list[Edge]) -> tuple[DemandGraph, list[int]]:
    """Renormalized sub-instance on the given edges, with dense node ids."""
    nodes = sorted({u for e in edges for u in e})
    index = {u: i for i, u in enumerate(nodes)}
    weights = {(index[u], index[v]): g.edges[(u, v)] for u, v in edges}
    return normalize(weights, n=len(nodes)), nodes


def heavy_prefix(
    g: DemandGraph, d1: int, budget: int, *, root_extra_child: bool = False
) -> list[Edge]:
    """Longest descending-demand prefix whose Steiner-node host fits the budget.

    The exact host size follows from the induced degree sequence alone
    (tree shapes are fixed by leaf counts) and is monotone in the prefix
    length, so binary search applies.
    """
    if d1 < 3:
        raise ValueError("heavy-edge degree bound must be >= 3")
    order = demand_sorted_edges(g)

    def fits(length: int) -> bool:
        if length == 0:
            return True
        deg: dict[int, int] = {}
        for u, v in order[:length]:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        total = sum(
            tree_internal_count(d, d1 - 1, root_extra_child=root_extra_child)
            for d in deg.values()
        )
        return total <= budget

    lo, hi = 0, len(order)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if fits(mid):
            lo = mid
        else:
            hi = mid - 1
    return order[:lo]


def _heavy_part_edges(
    g: DemandGraph, d1: int, *, root_extra_child: bool = False
) -> set[Edge]:
    """Steiner-node host for the heavy prefix, folded back onto V.

    Steiner nodes are identified with unused demand nodes in ascending id
    order; the prefix budget guarantees they fit.
    """
    prefix = heavy_prefix(g, d1, g.n, root_extra_child=root_extra_child)
    if not prefix:
        return set()
    induced, nodes = _induced_instance(g, prefix)
    res = steiner_node_insertion(induced, d1, root_extra_child=root_extra_child)
    unused = sorted(set(range(g.n)) - set(nodes))
    mapping = {i: u for i, u in enumerate(nodes)}
    for j in range(res.host.steiner_count):
        mapping[len(nodes) + j] = unused[j]
    edges = set()
    for u, v in res.host.edges:
        a, b = mapping[u], mapping[v]
        edges.add((a, b) if a < b else (b, a))
    return edges


def _fill_random_edges(
    n: int, cap: int, rng: random.Random, edges: set[Edge], deg: list[int]
) -> None:
    """Insert random edges in place until no pair has spare capacity left."""
    unsat = [v for v in range(n) if deg[v] < cap]
    pos = {v: i for i, v in enumerate(unsat)}

    def drop(v: int) -> None:
        i = pos.pop(v)
        last = unsat.pop()
        if last != v:
            unsat[i] = last
            pos[last] = i

    def insert(u: int, v: int) -> None:
        edges.add((u, v) if u < v else (v, u))
        for x in (u, v):
            deg[x] += 1
            if deg[x] == cap:
                drop(x)

    while len(unsat) >= 2:
        placed = False
        for _ in range(16):
            u, v = rng.choice(unsat), rng.choice(unsat)
            if u == v:
                continue
            e = (u, v) if u < v else (v, u)
            if e in edges:
                continue
            insert(u, v)
            placed = True
            break
        if placed:
            continue
        candidates = [
            (unsat[i], unsat[j])
            for i in range(len(unsat))
            for j in range(i + 1, len(unsat))
            if (min(unsat[i], unsat[j]), max(unsat[i], unsat[j])) not in edges
        ]
        if not candidates:
            return
        insert(*rng.choice(candidates))


def _edges_connected(n: int, edges: set[Edge]) -> bool:
    if n <= 1:
        return True
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count == n


def _connected_cover(n: int, d2: int, rng: random.Random) -> set[Edge]:
    """Connected max-degree-d2 overlay: random graphs with a tree fallback."""
    for _ in range(32):
        edges: set[Edge] = set()
        _fill_random_edges(n, d2, rng, edges, [0] * n)
        if _edges_connected(n, edges):
            return edges
    arity = d2 - 1
    return {((i - 1) // arity, i) for i in range(1, n)}


def fixed_degree(
    g: DemandGraph,
    delta: int,
    seed: int,
    *,
    d2: int = 3,
    densify: bool = False,
) -> HeuristicOutcome:
    """Split the bound as d1 + d2: a Steiner-node host for the heaviest edges
    (Steiner nodes folded onto unused graph nodes), plus a degree-d2 cover for
    the rest.

    The default cover is a connected random overlay, which makes the output
    connected for every input.  With ``densify`` the overlay is replaced by
    random edge insertion up to the full bound; that variant can return a
    disconnected host.
    """
    if delta < 6:
        raise ValueError("fixed-degree heuristic needs a degree bound >= 6")
    d1 = delta - d2
    if d1 < 3 or d2 < 3:
        raise ValueError("both sub-bounds must be >= 3")
    rng = random.Random(seed)
    edges = _heavy_part_edges(g, d1)
    if densify:
        deg = [0] * g.n
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        _fill_random_edges(g.n, delta, rng, edges, deg)
    else:
        edges = edges | _connected_cover(g.n, d2, rng)
    host = HostGraph(n_total=g.n, n_original=g.n, delta=delta, edges=tuple(sorted(edges)))
    return _outcome("fixed", g, host, seed)


# ---------------------------------------------------------------------------
# demand-oblivious baselines


def random_tree_host(n: int, delta: int, seed: int) -> HostGraph:
    """Tree over a random node permutation, filled layer by layer."""
    if delta < 2:
        raise ValueError("degree bound must be >= 2")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    arity = delta - 1
    edges = []
    for i in range(1, n):
        u, v = perm[(i - 1) // arity], perm[i]
        edges.append((u, v) if u < v else (v, u))
    return HostGraph(n_total=n, n_original=n, delta=delta, edges=tuple(sorted(edges)))


def random_tree(g: DemandGraph, delta: int, seed: int) -> HeuristicOutcome:
    return _outcome("rtree", g, random_tree_host(g.n, delta, seed), seed)


def _pairing_attempt(n: int, delta: int, rng: random.Random) -> tuple[set[Edge], bool]:
    """One stub-pairing pass: pair degree stubs at random, re-drawing
    collisions, until every stub is used or no addable pair remains.
    A stuck state is edge-maximal under the degree cap by construction."""
    edges: set[Edge] = set()
    stubs = [v for v in range(n) for _ in range(delta)]
    while stubs:
        rng.shuffle(stubs)
        leftovers: list[int] = []
        it = iter(stubs)
        for u, v in zip(it, it):
            e = (u, v) if u < v else (v, u)
            if u != v and e not in edges:
                edges.add(e)
            else:
                leftovers.extend((u, v))
        if len(stubs) % 2:
            leftovers.append(stubs[-1])
        if len(leftovers) == len(stubs):
            deficient = sorted(set(leftovers))
            addable = any(
                (u, v) not in edges
                for i, u in enumerate(deficient)
                for v in deficient[i + 1 :]
            )
            if not addable:
                return edges, False
        stubs = leftovers
    return edges, True


def random_regular(n: int, delta: int, seed: int) -> HostGraph:
    """Random stub pairing aiming for a delta-regular graph.

    Retries up to 64 times; if regularity is never reached the last (maximal)
    partial graph is returned.  Connectivity is not guaranteed.
    """
    if not n > delta >= 2:
        raise ValueError("need n > delta >= 2")
    rng = random.Random(seed)
    edges: set[Edge] = set()
    for _ in range(64):
        edges, regular = _pairing_attempt(n, delta, rng)
        if regular:
            break
    return HostGraph(n_total=n, n_original=n, delta=delta, edges=tuple(sorted(edges)))


def random_regular_outcome(g: DemandGraph, delta: int, seed: int) -> HeuristicOutcome:
    return _outcome("rgraph", g, random_regular(g.n, delta, seed), seed)


# ---------------------------------------------------------------------------
# greedy selection / deletion and the hybrid


def greedy_edge_selection(g: DemandGraph, delta: int) -> HeuristicOutcome:
    """Keep the heaviest edges while both endpoints have spare degree."""
    if delta < 1:
        raise ValueError("degree bound must be >= 1")
    deg = [0] * g.n
    edges = []
    for u, v in demand_sorted_edges(g):
        if deg[u] < delta and deg[v] < delta:
            deg[u] += 1
            deg[v] += 1
            edges.append((u, v))
    host = HostGraph(n_total=g.n, n_original=g.n, delta=delta, edges=tuple(sorted(edges)))
    if connected_for_demand(host, g):
        return _outcome("ges", g, host, None)
    return _outcome(
        "ges", g, host, None, failed=True,
        reason="a positive-demand pair is disconnected (infinite EPL)",
    )


def _ascending_edges(g: DemandGraph) -> list[Edge]:
    return [e for e, _ in sorted(g.sorted_edges, key=lambda ew: (ew[1], ew[0]))]


def greedy_edge_deletion(g: DemandGraph, delta: int) -> HeuristicOutcome:
    """Delete light edges at over-degree nodes unless that disconnects the graph.

    A spanning tree of the demand graph is maintained: removing a non-tree
    edge never needs a connectivity search, removing a tree edge triggers a
    search for a single patch edge across the split.
    """
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for (u, v), _ in g.sorted_edges:
        adj[u].add(v)
        adj[v].add(u)
    active = [v for v in range(g.n) if adj[v]]

    # BFS spanning tree; also detects a disconnected demand graph
    root = active[0]
    parent = {root: root}
    queue = deque([root])
    tree: set[Edge] = set()
    while queue:
        u = queue.popleft()
        for v in sorted(adj[u]):
            if v not in parent:
                parent[v] = u
                tree.add((u, v) if u < v else (v, u))
                queue.append(v)
    if len(parent) != len(active):
        host = HostGraph(
            n_total=g.n, n_original=g.n, delta=delta, edges=tuple(g.edges)
        )
        return _outcome(
            "ged", g, host, None, failed=True, reason="demand graph disconnected"
        )

    tree_adj: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in tree:
        tree_adj[u].add(v)
        tree_adj[v].add(u)

    def tree_side(start: int, banned: Edge) -> set[int]:
        side = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in tree_adj[x]:
                e = (x, y) if x < y else (y, x)
                if e == banned or y in side:
                    continue
                side.add(y)
                stack.append(y)
        return side

    deg = [len(adj[v]) for v in range(g.n)]
    for u, v in _ascending_edges(g):
        if deg[u] <= delta and deg[v] <= delta:
            continue
        e = (u, v)
        if e not in tree:
            adj[u].discard(v)
            adj[v].discard(u)
            deg[u] -= 1
            deg[v] -= 1
            continue
        side = tree_side(u, e)
        patch = None
        for x in sorted(side):
            for y in sorted(adj[x]):
                if y not in side and (min(x, y), max(x, y)) != e:
                    patch = (min(x, y), max(x, y))
                    break
            if patch:
                break
        if patch is None:
            continue  # bridge, cannot delete
        adj[u].discard(v)
        adj[v].discard(u)
        deg[u] -= 1
        deg[v] -= 1
        tree.discard(e)
        tree.add(patch)
        tree_adj[u].discard(v)
        tree_adj[v].discard(u)
        tree_adj[patch[0]].add(patch[1])
        tree_adj[patch[1]].add(patch[0])

    edges = tuple(
        sorted((u, v) for u in range(g.n) for v in adj[u] if u < v)
    )
    host = HostGraph(n_total=g.n, n_original=g.n, delta=delta, edges=edges)
    if max(deg) > delta:
        return _outcome(
            "ged", g, host, None, failed=True,
            reason=f"max degree {max(deg)} still above {delta} after the pass",
        )
    return _outcome("ged", g, host, None)


def hybrid_edge_deletion(g: DemandGraph, delta: int, seed: int) -> HeuristicOutcome:
    """Greedy edge deletion, restructured by Steiner-node insertion on failure.

    When the deletion pass already meets the bound its host is returned
    untouched.  Otherwise the remaining graph is renormalized and rebuilt with
    the full bound handed to the Steiner-node stage (tree roots may take one
    extra child, so compliant graphs pass through unchanged), Steiner nodes
    folded onto unused graph nodes, then random edges inserted up to the
    bound.  Connectivity of that fallback is reported, not guaranteed.
    """
    if delta < 2:
        raise ValueError("degree bound must be >= 2")
    ged = greedy_edge_deletion(g, delta)
    if not ged.failed:
        return HeuristicOutcome(
            algorithm="hed",
            host=ged.host,
            seed=seed,
            failed=False,
            reason=None,
            connected=ged.connected,
        )
    if delta < 3:
        # the restructuring stage needs tree arity >= 2
        return HeuristicOutcome(
            algorithm="hed", host=ged.host, seed=seed, failed=True,
            reason="deletion failed and restructuring needs a bound >= 3",
            connected=ged.connected,
        )
    assert ged.host is not None
    remaining = normalize({e: g.edges[e] for e in ged.host.edges}, n=g.n)
    rng = random.Random(seed)
    edges = _heavy_part_edges(remaining, delta, root_extra_child=True)
    deg = [0] * g.n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    _fill_random_edges(g.n, delta, rng, edges, deg)
    host = HostGraph(n_total=g.n, n_original=g.n, delta=delta, edges=tuple(sorted(edges)))
    return _outcome("hed", g, host, seed)
