"""Bounded-degree demand-aware network design toolkit."""

from .balancing import (
    BalancingResult,
    demand_balancing,
    threshold_balancing,
    threshold_feasible,
)
from .evaluate import (
    HostGraph,
    ValidationReport,
    expected_path_length,
    validate_host,
)
from .hardness import (
    HardnessInstance,
    circular_arrangement_connectify,
    cover_to_host,
    degree_blocking_gadget,
    vertex_cover_reduction,
)
from .heuristics import (
    HeuristicOutcome,
    fixed_degree,
    greedy_edge_deletion,
    greedy_edge_selection,
    heavy_prefix,
    hybrid_edge_deletion,
    random_regular,
    random_tree,
)
from .huffman import HuffmanTree, build_huffman, weighted_depth
from .io import parse_trace, read_demand, read_host, write_demand, write_host
from .model import (
    DemandGraph,
    Distribution,
    TraceStats,
    conditional,
    conditional_entropy,
    degree_stats,
    entropy_base_d,
    epl_lower_bound,
    marginal,
    normalize,
)
from .oracle import OracleResult, optimal_host, optimal_host_steiner
from .steiner import SniResult, sni_node_bound, steiner_node_insertion

__all__ = [
    "BalancingResult",
    "DemandGraph",
    "Distribution",
    "HardnessInstance",
    "HeuristicOutcome",
    "HostGraph",
    "HuffmanTree",
    "OracleResult",
    "SniResult",
    "TraceStats",
    "ValidationReport",
    "build_huffman",
    "circular_arrangement_connectify",
    "conditional",
    "conditional_entropy",
    "cover_to_host",
    "degree_blocking_gadget",
    "degree_stats",
    "demand_balancing",
    "entropy_base_d",
    "epl_lower_bound",
    "expected_path_length",
    "fixed_degree",
    "greedy_edge_deletion",
    "greedy_edge_selection",
    "heavy_prefix",
    "hybrid_edge_deletion",
    "marginal",
    "normalize",
    "optimal_host",
    "optimal_host_steiner",
    "parse_trace",
    "random_regular",
    "random_tree",
    "read_demand",
    "read_host",
    "sni_node_bound",
    "steiner_node_insertion",
    "threshold_balancing",
    "threshold_feasible",
    "validate_host",
    "vertex_cover_reduction",
    "weighted_depth",
    "write_demand",
    "write_host",
]
