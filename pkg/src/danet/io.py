"""Trace ingestion and the on-disk demand/host graph formats."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .evaluate import HostGraph
from .model import DemandGraph, normalize

DEMAND_MAGIC = "dan-demand v1"
HOST_MAGIC = "dan-host v1"

_SPLIT = re.compile(r"[,\s]+")


@dataclass(frozen=True)
class TraceResult:
    graph: DemandGraph
    labels: list[str]  # dense node id -> original label
    self_loops_dropped: int


def parse_trace(stream: Iterable[str], fmt: str = "pairs") -> TraceResult:
    """Aggregate a communication trace into a normalized demand graph.

    Records are ``src dst`` (format "pairs") or ``src dst timestamp``
    (format "timestamped"; the timestamp is ignored).  Labels are arbitrary
    strings mapped to dense ids in first-appearance order; opposite directions
    are merged and self-communications dropped (counted, not fatal).
    """
    if fmt == "pairs":
        fields = 2
    elif fmt == "timestamped":
        fields = 3
    else:
        raise ValueError(f"unknown trace format {fmt!r}")

    labels: list[str] = []
    ids: dict[str, int] = {}
    counts: dict[tuple[int, int], int] = {}
    records = 0
    loops = 0

    def node(label: str) -> int:
        if label not in ids:
            ids[label] = len(labels)
            labels.append(label)
        return ids[label]

    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = _SPLIT.split(line)
        if len(tokens) != fields:
            raise ValueError(
                f"line {lineno}: expected {fields} fields, got {len(tokens)}"
            )
        records += 1
        src, dst = node(tokens[0]), node(tokens[1])
        if src == dst:
            loops += 1
            continue
        e = (src, dst) if src < dst else (dst, src)
        counts[e] = counts.get(e, 0) + 1

    if records == 0:
        raise ValueError("empty trace")
    graph = normalize(counts, n=len(labels))  # raises "empty demand" if all loops
    return TraceResult(graph=graph, labels=labels, self_loops_dropped=loops)


def _format_weight(w: float) -> str:
    if w == int(w) and abs(w) < 1e15:
        return str(int(w))
    return repr(w)


def write_demand(path: str | Path, g: DemandGraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{DEMAND_MAGIC}\n{g.n} {g.m}\n")
        for (u, v), w in g.sorted_edges:
            fh.write(f"{u} {v} {_format_weight(w)}\n")


def _read_lines(path: str | Path) -> list[str]:
    with open(path, "r", encoding="utf-8") as fh:
        return [line.rstrip("\n") for line in fh if line.strip()]


def read_demand(path: str | Path) -> DemandGraph:
    """Read a demand-graph file; weights are normalized on the way in."""
    lines = _read_lines(path)
    if not lines:
        raise ValueError("empty demand file")
    if lines[0] != DEMAND_MAGIC:
        if lines[0].startswith("dan-demand"):
            raise ValueError(f"version mismatch: {lines[0]!r}")
        raise ValueError("malformed header: not a demand-graph file")
    try:
        n, m = map(int, lines[1].split())
    except (IndexError, ValueError) as exc:
        raise ValueError("malformed header: expected 'n m'") from exc
    body = lines[2:]
    if len(body) != m:
        raise ValueError(f"expected {m} edge lines, found {len(body)}")
    weights: dict[tuple[int, int], float] = {}
    for i, line in enumerate(body, 3):
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {i}: expected 'u v w'")
        u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        if not 0 <= u < v < n:
            raise ValueError(f"line {i}: edge ({u},{v}) out of range")
        if w <= 0:
            raise ValueError(f"line {i}: weight must be positive")
        if (u, v) in weights:
            raise ValueError(f"line {i}: duplicate edge ({u},{v})")
        weights[(u, v)] = w
    return normalize(weights, n=n)


def write_host(path: str | Path, host: HostGraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{HOST_MAGIC}\n{host.n_total} {host.n_original} {host.delta}\n")
        for u, v in host.edges:
            fh.write(f"{u} {v}\n")


def read_host(path: str | Path) -> HostGraph:
    lines = _read_lines(path)
    if not lines:
        raise ValueError("empty host file")
    if lines[0] != HOST_MAGIC:
        if lines[0].startswith("dan-host"):
            raise ValueError(f"version mismatch: {lines[0]!r}")
        raise ValueError("malformed header: not a host-graph file")
    try:
        n_total, n_original, delta = map(int, lines[1].split())
    except (IndexError, ValueError) as exc:
        raise ValueError("malformed header: expected 'n_total n_original delta'") from exc
    edges = []
    for i, line in enumerate(lines[2:], 3):
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {i}: expected 'u v'")
        edges.append((int(parts[0]), int(parts[1])))
    return HostGraph(
        n_total=n_total, n_original=n_original, delta=delta, edges=tuple(edges)
    )


def write_labels(path: str | Path, labels: list[str]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for label in labels:
            fh.write(label + "\n")
