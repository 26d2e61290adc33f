"""Exact brute-force design for tiny instances.

Enumerates every simple degree-bounded graph on up to 7 nodes (with optional
unlabeled Steiner nodes) and returns the minimum-EPL host.  Used as ground
truth for optimality and approximation-factor tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .evaluate import HostGraph, expected_path_length
from .model import DemandGraph

MAX_ORACLE_NODES = 7

# adjacency-bitmask candidate sets, keyed (n_total, delta) resp. + steiner_start
_RAW_CACHE: dict[tuple[int, int], np.ndarray] = {}
_CANON_CACHE: dict[tuple[int, int, int], np.ndarray] = {}


@dataclass(frozen=True)
class OracleResult:
    host: HostGraph
    epl: float
    examined: int


def _enumerate_raw(n: int, delta: int) -> np.ndarray:
    """All simple graphs on n labeled nodes with max degree <= delta,
    as (G, n) uint32 adjacency bitmasks, in DFS order over the pair list."""
    key = (n, delta)
    if key in _RAW_CACHE:
        return _RAW_CACHE[key]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    adj = [0] * n
    deg = [0] * n
    out: list[tuple[int, ...]] = []

    def rec(idx: int) -> None:
        if idx == len(pairs):
            out.append(tuple(adj))
            return
        i, j = pairs[idx]
        rec(idx + 1)
        if deg[i] < delta and deg[j] < delta:
            deg[i] += 1
            deg[j] += 1
            adj[i] |= 1 << j
            adj[j] |= 1 << i
            rec(idx + 1)
            deg[i] -= 1
            deg[j] -= 1
            adj[i] &= ~(1 << j)
            adj[j] &= ~(1 << i)

    rec(0)
    arr = np.array(out, dtype=np.uint32)
    _RAW_CACHE[key] = arr
    return arr


def _relabel(arr: np.ndarray, perm: dict[int, int], n: int) -> np.ndarray:
    """Apply a node relabeling to every adjacency-bitmask row set."""
    res = np.zeros_like(arr)
    for old in range(n):
        col = arr[:, old]
        new_col = np.zeros_like(col)
        for bit in range(n):
            new_col |= ((col >> np.uint32(bit)) & np.uint32(1)) << np.uint32(
                perm.get(bit, bit)
            )
        res[:, perm.get(old, old)] = new_col
    return res


def _lex_less(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise: is a's row-tuple lexicographically smaller than b's?"""
    less = np.zeros(a.shape[0], dtype=bool)
    tied = np.ones(a.shape[0], dtype=bool)
    for c in range(a.shape[1]):
        less |= tied & (a[:, c] < b[:, c])
        tied &= a[:, c] == b[:, c]
    return less


def _candidates(n: int, delta: int, steiner_start: int) -> np.ndarray:
    """Degree-bounded graphs on n nodes, one representative per orbit of the
    Steiner-label permutation group (nodes >= steiner_start)."""
    key = (n, delta, steiner_start)
    if key in _CANON_CACHE:
        return _CANON_CACHE[key]
    arr = _enumerate_raw(n, delta)
    steiner = list(range(steiner_start, n))
    keep = np.ones(arr.shape[0], dtype=bool)
    for perm in permutations(steiner):
        mapping = {s: p for s, p in zip(steiner, perm) if s != p}
        if not mapping:
            continue
        keep &= ~_lex_less(_relabel(arr, mapping, n), arr)
    out = arr[keep]
    _CANON_CACHE[key] = out
    return out


def _batch_epl(arr: np.ndarray, n: int, g: DemandGraph) -> np.ndarray:
    """EPL of every candidate; inf where a demand pair is disconnected."""
    G = arr.shape[0]
    by_src: dict[int, list[tuple[int, float]]] = {}
    for (u, v), w in g.sorted_edges:
        by_src.setdefault(u, []).append((v, w))
    epl = np.zeros(G, dtype=np.float64)
    ok = np.ones(G, dtype=bool)
    one = np.uint32(1)
    for s in sorted(by_src):
        targets = by_src[s]
        dist = {t: np.full(G, -1, dtype=np.int8) for t, _ in targets}
        seen = np.full(G, 1 << s, dtype=np.uint32)
        frontier = seen.copy()
        d = 0
        while d < n and frontier.any():
            nxt = np.zeros(G, dtype=np.uint32)
            for j in range(n):
                sel = ((frontier >> np.uint32(j)) & one).astype(bool)
                if sel.any():
                    nxt |= np.where(sel, arr[:, j], np.uint32(0))
            nxt &= ~seen
            d += 1
            for t, _ in targets:
                hit = ((nxt >> np.uint32(t)) & one).astype(bool) & (dist[t] < 0)
                dist[t][hit] = d
            seen |= nxt
            frontier = nxt
        for t, w in targets:
            reached = dist[t] >= 0
            ok &= reached
            epl += np.where(reached, w * dist[t].astype(np.float64), 0.0)
    epl[~ok] = np.inf
    return epl


def _mask_edges(row: tuple[int, ...] | np.ndarray, n: int) -> tuple[tuple[int, int], ...]:
    edges = []
    for i in range(n):
        bits = int(row[i])
        for j in range(i + 1, n):
            if bits & (1 << j):
                edges.append((i, j))
    return tuple(edges)


def _search(g: DemandGraph, delta: int, n_total: int):
    arr = _candidates(n_total, delta, g.n)
    epl = _batch_epl(arr, n_total, g)
    best = float(np.min(epl))
    if not np.isfinite(best):
        return None, arr.shape[0]
    ties = np.flatnonzero(epl == best)
    best_edges = min(_mask_edges(arr[i], n_total) for i in ties)
    return (best, best_edges), arr.shape[0]


def optimal_host(g: DemandGraph, delta: int) -> OracleResult:
    """Exhaustive minimum-EPL host on exactly the demand nodes."""
    return optimal_host_steiner(g, delta, 0)


def optimal_host_steiner(g: DemandGraph, delta: int, max_steiner: int) -> OracleResult:
    """Exhaustive minimum over hosts with up to ``max_steiner`` extra nodes.

    Steiner labels are canonicalized (EPL is invariant under permuting them),
    and among equal-EPL hosts the lexicographically smallest edge set with the
    fewest Steiner nodes wins.
    """
    if max_steiner < 0:
        raise ValueError("negative Steiner budget")
    if g.n + max_steiner > MAX_ORACLE_NODES:
        raise ValueError("instance too large for oracle")
    best = None
    best_s = None
    examined = 0
    for s in range(max_steiner + 1):
        found, count = _search(g, delta, g.n + s)
        examined += count
        if found is None:
            continue
        if best is None or found[0] < best[0]:
            best, best_s = found, s
    if best is None:
        raise ValueError("no feasible host connects all demand pairs")
    epl, edges = best
    host = HostGraph(
        n_total=g.n + best_s, n_original=g.n, delta=delta, edges=edges
    )
    return OracleResult(
        host=host, epl=expected_path_length(g, host), examined=examined
    )
