"""Generators for NP-hardness instances of bounded-degree network design.

Builds integer-weighted decision instances: a vertex-cover reduction (odd
degree bounds, with a doubling construction for even bounds) and the
circular-arrangement connectification for the degree-2 case.  Weights stay
integral end to end so threshold comparisons are exact.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .evaluate import HostGraph
from .model import DemandGraph, Edge, canonical_edge


@dataclass(frozen=True)
class BlockingGadget:
    """Graph on d+2 nodes: one node of degree d-1, all others of degree d."""

    n: int
    deficient: int
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class HardnessInstance:
    demand: DemandGraph  # integer weights, not normalized
    delta: int
    K: int
    W: int
    M: int
    b: int
    root: int | None = None
    selectors: tuple[int, ...] = ()
    vertex_roots: dict[int, int] = field(default_factory=dict)
    terminal_of_edge: dict[Edge, int] = field(default_factory=dict)
    forced_edges: tuple[Edge, ...] = ()
    unit_edges: tuple[Edge, ...] = ()
    copy_offset: int | None = None


def degree_blocking_gadget(d: int) -> BlockingGadget:
    """A (d+1)-clique minus a matching of size (d-1)/2, plus one extra node
    joined to the matched vertices.  Requires odd d (parity forbids even d)."""
    if d < 3 or d % 2 == 0:
        raise ValueError("degree-blocking gadgets exist only for odd d >= 3")
    matching = {(2 * i, 2 * i + 1) for i in range((d - 1) // 2)}
    edges = [
        (i, j)
        for i in range(d + 1)
        for j in range(i + 1, d + 1)
        if (i, j) not in matching
    ]
    extra = d + 1
    edges.extend((i, extra) for i in range(d - 1))
    return BlockingGadget(n=d + 2, deficient=extra, edges=tuple(sorted(edges)))


def _check_3_regular(edges: list[Edge], nv: int) -> None:
    deg = [0] * nv
    seen = set()
    for u, v in edges:
        e = canonical_edge(u, v)
        if e in seen:
            raise ValueError(f"duplicate edge {e}")
        seen.add(e)
        if not (0 <= e[0] < e[1] < nv):
            raise ValueError(f"edge {e} out of range")
        deg[e[0]] += 1
        deg[e[1]] += 1
    if any(d != 3 for d in deg):
        raise ValueError("input graph is not 3-regular")


class _Builder:
    def __init__(self) -> None:
        self.n = 0
        self.edges: list[Edge] = []
        self.attachments: list[tuple[int, int]] = []  # (node, gadget count)

    def node(self) -> int:
        self.n += 1
        return self.n - 1

    def edge(self, u: int, v: int) -> None:
        self.edges.append(canonical_edge(u, v))

    def attach(self, node: int, count: int) -> None:
        if count > 0:
            self.attachments.append((node, count))

    def append_gadgets(self, delta: int) -> None:
        gadget = degree_blocking_gadget(delta)
        for node, count in self.attachments:
            for _ in range(count):
                base = self.n
                self.n += gadget.n
                for u, v in gadget.edges:
                    self.edge(base + u, base + v)
                self.edge(node, base + gadget.deficient)


def _binary_tree(builder: _Builder, leaves: int) -> tuple[int, list[int], list[int]]:
    """Complete binary tree with the given power-of-two leaf count.
    Returns (root, internal non-root nodes, leaves)."""
    level = [builder.node()]
    root = level[0]
    internal: list[int] = []
    while len(level) < leaves:
        nxt = []
        for parent in level:
            for _ in range(2):
                child = builder.node()
                builder.edge(parent, child)
                nxt.append(child)
        if len(nxt) < leaves:
            internal.extend(nxt)
        level = nxt
    return root, internal, level


def _vc_reduction_odd(edges3: list[Edge], nv: int, k: int, delta: int) -> HardnessInstance:
    b = max(2, 1 << (k - 1).bit_length())
    depth = b.bit_length() - 1
    builder = _Builder()

    # selector gadget: binary tree whose first k leaves select cover vertices
    root, internal, leaves = _binary_tree(builder, b)
    selectors = leaves[:k]
    builder.attach(root, delta - 2)
    for node in internal:
        builder.attach(node, delta - 3)
    for leaf in selectors:
        builder.attach(leaf, delta - 2)
    for leaf in leaves[k:]:
        builder.attach(leaf, delta - 1)

    # vertex gadgets: depth-2 binary trees sharing one terminal per input edge
    vertex_roots: dict[int, int] = {}
    terminal_of_edge: dict[Edge, int] = {}
    incident: dict[int, list[Edge]] = {v: [] for v in range(nv)}
    for e in sorted(canonical_edge(*e) for e in edges3):
        incident[e[0]].append(e)
        incident[e[1]].append(e)
    for v in range(nv):
        r_v = builder.node()
        vertex_roots[v] = r_v
        builder.attach(r_v, delta - 3)
        mids = [builder.node(), builder.node()]
        for mid in mids:
            builder.edge(r_v, mid)
            builder.attach(mid, delta - 3)
        slots = [mids[0], mids[0], mids[1]]
        for mid, e in zip(slots, incident[v]):
            t = terminal_of_edge.get(e)
            if t is None:
                # blocking gadgets are attached once; the second gadget set of
                # the merged terminal is elided, leaving it at full degree
                t = builder.node()
                terminal_of_edge[e] = t
                builder.attach(t, delta - 2)
            builder.edge(mid, t)
        filler = builder.node()
        builder.edge(mids[1], filler)
        builder.attach(filler, delta - 1)

    builder.append_gadgets(delta)

    forced = tuple(sorted(builder.edges))
    M = len(forced)
    W = len(edges3) * (depth + 3) + 1
    K = M * W + len(edges3) * (depth + 3)
    unit = tuple(
        canonical_edge(root, terminal_of_edge[e])
        for e in sorted(terminal_of_edge)
    )
    weights: dict[Edge, float] = {e: float(W) for e in forced}
    for e in unit:
        weights[e] = 1.0
    demand = DemandGraph(n=builder.n, edges=weights, normalized=False)
    return HardnessInstance(
        demand=demand,
        delta=delta,
        K=K,
        W=W,
        M=M,
        b=b,
        root=root,
        selectors=tuple(selectors),
        vertex_roots=vertex_roots,
        terminal_of_edge=terminal_of_edge,
        forced_edges=forced,
        unit_edges=unit,
    )


def vertex_cover_reduction(edges3: list[Edge], nv: int, k: int, delta: int) -> HardnessInstance:
    """Reduction from vertex cover on a 3-regular graph.

    For odd delta this is the direct gadget construction; for even delta two
    disjoint copies of the (delta-1)-instance are tied together by forced
    edges between corresponding nodes.
    """
    _check_3_regular(edges3, nv)
    if not 1 <= k <= nv:
        raise ValueError("cover size k out of range")
    if delta < 3:
        raise ValueError("degree bound must be >= 3")
    if delta % 2 == 1:
        return _vc_reduction_odd(edges3, nv, k, delta)

    odd = _vc_reduction_odd(edges3, nv, k, delta - 1)
    N = odd.demand.n
    weights: dict[Edge, float] = {}
    for (u, v), w in odd.demand.sorted_edges:
        weights[(u, v)] = w
        weights[(u + N, v + N)] = w
    for i in range(N):
        weights[(i, i + N)] = float(odd.W)
    forced = tuple(
        sorted(
            list(odd.forced_edges)
            + [(u + N, v + N) for u, v in odd.forced_edges]
            + [(i, i + N) for i in range(N)]
        )
    )
    unit = tuple(
        sorted(list(odd.unit_edges) + [(u + N, v + N) for u, v in odd.unit_edges])
    )
    demand = DemandGraph(n=2 * N, edges=weights, normalized=False)
    return HardnessInstance(
        demand=demand,
        delta=delta,
        K=2 * odd.K + N * odd.W,
        W=odd.W,
        M=2 * odd.M + N,
        b=odd.b,
        root=odd.root,
        selectors=odd.selectors,
        vertex_roots=odd.vertex_roots,
        terminal_of_edge=odd.terminal_of_edge,
        forced_edges=forced,
        unit_edges=unit,
        copy_offset=N,
    )


def cover_to_host(inst: HardnessInstance, cover) -> HostGraph:
    """Host realizing a claimed vertex cover: all forced edges plus one
    selector-to-vertex-root edge per cover member (in both copies when the
    instance is doubled)."""
    cover = sorted(set(cover))
    if len(cover) > len(inst.selectors):
        raise ValueError(f"cover has {len(cover)} nodes, instance allows {len(inst.selectors)}")
    edges = list(inst.forced_edges)
    for i, v in enumerate(cover):
        if v not in inst.vertex_roots:
            raise ValueError(f"unknown vertex {v}")
        e = canonical_edge(inst.selectors[i], inst.vertex_roots[v])
        edges.append(e)
        if inst.copy_offset is not None:
            off = inst.copy_offset
            edges.append(canonical_edge(e[0] + off, e[1] + off))
    return HostGraph(
        n_total=inst.demand.n,
        n_original=inst.demand.n,
        delta=inst.delta,
        edges=tuple(sorted(edges)),
    )


def instance_cost(inst: HardnessInstance, host: HostGraph):
    """Integer-weighted cost of a host; math.inf when a demand pair is cut."""
    by_src: dict[int, list[tuple[int, float]]] = {}
    for (u, v), w in inst.demand.sorted_edges:
        by_src.setdefault(u, []).append((v, w))
    total = 0
    adj = host.adjacency
    for s in sorted(by_src):
        dist = [-1] * host.n_total
        dist[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        for v, w in by_src[s]:
            if dist[v] < 0:
                return math.inf
            total += int(w) * dist[v]
    return total


def circular_arrangement_connectify(
    weights: dict[Edge, int], K: int, n: int | None = None
) -> HardnessInstance:
    """Make a circular-arrangement instance connected: scale its weights by
    n^3 on a complete graph (weight 1 on non-edges) and set the threshold to
    n^3 (K+1) - 1."""
    canon = {canonical_edge(u, v): int(w) for (u, v), w in weights.items()}
    if any(w < 1 for w in canon.values()):
        raise ValueError("weights must be positive integers")
    if n is None:
        n = 1 + max(v for _, v in canon)
    cube = n**3
    full = {
        (u, v): float(cube * canon[(u, v)]) if (u, v) in canon else 1.0
        for u in range(n)
        for v in range(u + 1, n)
    }
    demand = DemandGraph(n=n, edges=full, normalized=False)
    return HardnessInstance(
        demand=demand,
        delta=2,
        K=cube * (K + 1) - 1,
        W=0,
        M=0,
        b=0,
    )


def write_instance(inst: HardnessInstance, demand_path, meta_path) -> None:
    """Serialize as a demand-graph file plus a key=value metadata sidecar."""
    from .io import write_demand

    write_demand(demand_path, inst.demand)
    lines = [
        f"delta={inst.delta}",
        f"K={inst.K}",
        f"W={inst.W}",
        f"M={inst.M}",
        f"b={inst.b}",
    ]
    if inst.root is not None:
        lines.append(f"root={inst.root}")
    if inst.selectors:
        lines.append("selectors=" + ",".join(map(str, inst.selectors)))
    for v in sorted(inst.vertex_roots):
        lines.append(f"vertex_root.{v}={inst.vertex_roots[v]}")
    for (u, v), t in sorted(inst.terminal_of_edge.items()):
        lines.append(f"terminal.{u}-{v}={t}")
    if inst.copy_offset is not None:
        lines.append(f"copy_offset={inst.copy_offset}")
    with open(meta_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
