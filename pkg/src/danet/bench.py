"""Benchmark harness: run design algorithms over instance files, emit CSV.

Rows are sorted by (instance, alg, delta, rep) and newline-terminated, so a
rerun with the same config and seeds reproduces the file byte for byte except
for the wall-clock runtime column.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass
from pathlib import Path

from . import balancing, heuristics
from .evaluate import expected_path_length
from .heuristics import HeuristicOutcome
from .io import read_demand
from .model import DemandGraph
from .steiner import steiner_node_insertion

CSV_COLUMNS = [
    "instance", "alg", "delta", "seed", "status", "epl",
    "maxdeg", "n_total", "steiner", "runtime_ms",
]

AGGREGATE_COLUMNS = ["alg", "delta", "mean_epl"]

ALGORITHMS = ("sni", "db", "tb", "fixed", "rtree", "rgraph", "ges", "ged", "hed")

#: Algorithms that ignore the seed entirely.
DETERMINISTIC = frozenset({"sni", "db", "tb", "ges", "ged"})

#: Algorithms that choose their own degree bound.
SELF_BOUNDED = frozenset({"db", "tb"})


def design(alg: str, g: DemandGraph, delta: int, seed: int) -> HeuristicOutcome:
    """Uniform dispatch: every algorithm as a HeuristicOutcome."""
    if alg == "sni":
        res = steiner_node_insertion(g, delta)
        return HeuristicOutcome(algorithm=alg, host=res.host, seed=seed)
    if alg == "db":
        return HeuristicOutcome(
            algorithm=alg, host=balancing.demand_balancing(g).host, seed=seed
        )
    if alg == "tb":
        return HeuristicOutcome(
            algorithm=alg, host=balancing.threshold_balancing(g).host, seed=seed
        )
    if alg == "fixed":
        return heuristics.fixed_degree(g, delta, seed)
    if alg == "rtree":
        return heuristics.random_tree(g, delta, seed)
    if alg == "rgraph":
        return heuristics.random_regular_outcome(g, delta, seed)
    if alg == "ges":
        return heuristics.greedy_edge_selection(g, delta)
    if alg == "ged":
        return heuristics.greedy_edge_deletion(g, delta)
    if alg == "hed":
        return heuristics.hybrid_edge_deletion(g, delta, seed)
    raise ValueError(f"unknown algorithm tag {alg!r}")


@dataclass(frozen=True)
class BenchConfig:
    instances: list[str]
    algs: list[str]
    deltas: list[int]
    reps: int
    seed: int
    out: str
    aggregate: str


def parse_config(path: str | Path) -> BenchConfig:
    """Parse a key=value config; list values are comma-separated."""
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected key=value")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    for key in ("instances", "algs", "deltas"):
        if key not in values:
            raise ValueError(f"config is missing {key!r}")
    instances = [s.strip() for s in values["instances"].split(",") if s.strip()]
    algs = [s.strip() for s in values["algs"].split(",") if s.strip()]
    deltas = [int(s) for s in values["deltas"].split(",") if s.strip()]
    for alg in algs:
        if alg not in ALGORITHMS:
            raise ValueError(f"unknown algorithm tag {alg!r}")
    for inst in instances:
        if not Path(inst).exists():
            raise ValueError(f"missing instance file {inst!r}")
    out = values.get("out", "bench.csv")
    return BenchConfig(
        instances=instances,
        algs=algs,
        deltas=deltas,
        reps=int(values.get("reps", "1")),
        seed=int(values.get("seed", "0")),
        out=out,
        aggregate=values.get("aggregate", str(Path(out).with_suffix("")) + "-aggregate.csv"),
    )


def run_bench(cfg: BenchConfig) -> tuple[list[dict], list[dict]]:
    """Execute all (instance, alg, delta, rep) cells; returns (rows, aggregate).

    The per-repetition seed is base seed + repetition index.  Runtime covers
    the design call only; EPL evaluation is excluded.
    """
    graphs = {inst: read_demand(inst) for inst in cfg.instances}
    rows = []
    for inst in cfg.instances:
        g = graphs[inst]
        name = Path(inst).stem
        for alg in cfg.algs:
            for delta in cfg.deltas:
                for rep in range(cfg.reps):
                    seed = cfg.seed + rep
                    start = time.perf_counter()
                    try:
                        outcome = design(alg, g, delta, seed)
                    except ValueError:
                        # precondition violation (e.g. bound too small for the
                        # algorithm) is recorded as a failure, not a crash
                        outcome = HeuristicOutcome(
                            algorithm=alg, host=None, seed=seed, failed=True
                        )
                    runtime_ms = (time.perf_counter() - start) * 1000.0
                    row = {
                        "instance": name, "alg": alg, "delta": delta,
                        "seed": seed, "status": "FAILED", "epl": "",
                        "maxdeg": "", "n_total": "", "steiner": "",
                        "runtime_ms": f"{runtime_ms:.3f}",
                    }
                    if outcome.host is not None:
                        host = outcome.host
                        row["maxdeg"] = host.max_degree
                        row["n_total"] = host.n_total
                        row["steiner"] = host.steiner_count
                        if not outcome.failed:
                            epl = expected_path_length(g, host)
                            if math.isinf(epl):
                                row["status"] = "INF"
                            else:
                                row["status"] = "OK"
                                row["epl"] = repr(epl)
                    rows.append(row)
    rows.sort(key=lambda r: (r["instance"], r["alg"], r["delta"], r["seed"]))

    groups: dict[tuple[str, int], list[float]] = {}
    for row in rows:
        if row["status"] == "OK":
            groups.setdefault((row["alg"], row["delta"]), []).append(float(row["epl"]))
    aggregate = [
        {"alg": alg, "delta": delta, "mean_epl": repr(math.fsum(v) / len(v))}
        for (alg, delta), v in sorted(groups.items())
    ]
    return rows, aggregate


def write_rows(path: str | Path, rows: list[dict], columns: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
