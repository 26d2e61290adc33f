"""Command-line interface.

Exit codes: 0 on success, 1 on usage or input errors, 2 when a design
algorithm reports failure on the given instance.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import bench, hardness, io, model, oracle
from .bench import SELF_BOUNDED, design
from .evaluate import expected_path_length
from .model import canonical_edge


def _cmd_ingest(args) -> int:
    with open(args.trace, "r", encoding="utf-8") as fh:
        result = io.parse_trace(fh, fmt=args.format)
    io.write_demand(args.out, result.graph)
    labels_path = args.labels or args.out + ".labels"
    io.write_labels(labels_path, result.labels)
    if result.self_loops_dropped:
        print(
            f"warning: dropped {result.self_loops_dropped} self-communication records",
            file=sys.stderr,
        )
    print(f"n={result.graph.n} m={result.graph.m} labels={labels_path}")
    return 0


def _cmd_stats(args) -> int:
    g = io.read_demand(args.demand)
    s = model.degree_stats(g)
    print(
        f"n={s.n} m={s.m} mindeg={s.min_degree} avgdeg={float(s.avg_degree)!r} "
        f"maxdeg={s.max_degree} entropy={s.entropy!r} cond_entropy={s.cond_entropy!r}"
    )
    return 0


def _cmd_design(args) -> int:
    g = io.read_demand(args.demand)
    if args.alg in SELF_BOUNDED:
        if args.delta is not None:
            print(f"warning: --alg {args.alg} ignores --delta", file=sys.stderr)
        delta = 0
    else:
        if args.delta is None:
            print(f"error: --alg {args.alg} requires --delta", file=sys.stderr)
            return 1
        delta = args.delta
    outcome = design(args.alg, g, delta, args.seed)
    if outcome.failed or outcome.host is None:
        print(f"design failed: {outcome.reason or 'no host produced'}", file=sys.stderr)
        return 2
    io.write_host(args.out, outcome.host)
    host = outcome.host
    print(f"n_total={host.n_total} maxdeg={host.max_degree} steiner={host.steiner_count}")
    return 0


def _cmd_eval(args) -> int:
    g = io.read_demand(args.demand)
    host = io.read_host(args.host)
    epl = expected_path_length(g, host)
    epl_str = "inf" if math.isinf(epl) else repr(epl)
    print(f"epl={epl_str} maxdeg={host.max_degree} steiner={host.steiner_count}")
    return 0


def _cmd_lower_bound(args) -> int:
    g = io.read_demand(args.demand)
    print(f"lower_bound={model.epl_lower_bound(g, args.delta)!r}")
    return 0


def _cmd_oracle(args) -> int:
    g = io.read_demand(args.demand)
    result = oracle.optimal_host_steiner(g, args.delta, args.max_steiner)
    if args.out:
        io.write_host(args.out, result.host)
    print(f"epl={result.epl!r} examined={result.examined}")
    return 0


def _read_edge_list(path):
    edges = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            edges.append((int(parts[0]), int(parts[1]), parts[2:]))
    return edges


def _cmd_gen_hard(args) -> int:
    if args.kind == "gadget":
        gadget = hardness.degree_blocking_gadget(args.d)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                for u, v in gadget.edges:
                    fh.write(f"{u} {v}\n")
        print(f"n={gadget.n} deficient={gadget.deficient} edges={len(gadget.edges)}")
        return 0
    raw = _read_edge_list(args.graph)
    if args.kind == "vc":
        edges = [canonical_edge(u, v) for u, v, _ in raw]
        nv = 1 + max(max(u, v) for u, v in edges)
        inst = hardness.vertex_cover_reduction(edges, nv, args.k, args.delta)
    else:  # ca
        weights = {(u, v): int(rest[0]) for u, v, rest in raw}
        inst = hardness.circular_arrangement_connectify(weights, args.threshold)
    meta = args.out + ".meta"
    hardness.write_instance(inst, args.out, meta)
    print(
        f"n={inst.demand.n} m={inst.demand.m} K={inst.K} W={inst.W} "
        f"M={inst.M} b={inst.b} meta={meta}"
    )
    return 0


def _cmd_bench(args) -> int:
    cfg = bench.parse_config(args.config)
    rows, aggregate = bench.run_bench(cfg)
    bench.write_rows(cfg.out, rows, bench.CSV_COLUMNS)
    bench.write_rows(cfg.aggregate, aggregate, bench.AGGREGATE_COLUMNS)
    print(f"rows={len(rows)} out={cfg.out} aggregate={cfg.aggregate}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="danet",
        description="Bounded-degree demand-aware network design toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="convert a traffic trace to a demand graph")
    p.add_argument("trace")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--format", choices=["pairs", "timestamped"], default="pairs")
    p.add_argument("--labels", default=None)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("stats", help="print demand-graph statistics")
    p.add_argument("demand")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("design", help="run a design algorithm")
    p.add_argument("demand")
    p.add_argument("--alg", choices=list(bench.ALGORITHMS), required=True)
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=_cmd_design)

    p = sub.add_parser("eval", help="expected path length of a host graph")
    p.add_argument("demand")
    p.add_argument("host")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("lower-bound", help="entropy lower bound on the EPL")
    p.add_argument("demand")
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=_cmd_lower_bound)

    p = sub.add_parser("oracle", help="exact optimum on tiny instances")
    p.add_argument("demand")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--max-steiner", type=int, default=0)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen-hard", help="generate hardness instances")
    kinds = p.add_subparsers(dest="kind", required=True)

    pk = kinds.add_parser("gadget", help="degree-blocking gadget")
    pk.add_argument("-d", type=int, required=True)
    pk.add_argument("-o", "--out", default=None)
    pk.set_defaults(func=_cmd_gen_hard)

    pk = kinds.add_parser("vc", help="vertex-cover reduction on a 3-regular graph")
    pk.add_argument("--graph", required=True, help="edge list file: 'u v' per line")
    pk.add_argument("-k", type=int, required=True)
    pk.add_argument("--delta", type=int, required=True)
    pk.add_argument("-o", "--out", required=True)
    pk.set_defaults(func=_cmd_gen_hard)

    pk = kinds.add_parser("ca", help="connectified circular arrangement")
    pk.add_argument("--graph", required=True, help="weighted edge list: 'u v w'")
    pk.add_argument("-K", "--threshold", type=int, required=True)
    pk.add_argument("-o", "--out", required=True)
    pk.set_defaults(func=_cmd_gen_hard)

    p = sub.add_parser("bench", help="run the benchmark harness")
    p.add_argument("config")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if (exc.code or 0) == 0 else 1
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
