"""Arbitrage cycle detection in market networks.

Pipeline: ingest a snapshot of ask quotes into an exchange graph, transform
the rate weights into small positive integers, find the minimum weight cycle
through a tripartite minimum-triangle search over min-plus products, recover
the explicit node sequence with a witness matrix, and report the cycle's
profitability against the original rates.
"""

from .apsp import (INF, CycleReport, DistanceMatrix, apsp_by_squaring,
                   floyd_warshall_min_cycle, karp_min_cycle_weight,
                   min_plus_product)
from .errors import (ArbcyclesError, SnapshotFormatError, WeightRangeError,
                     WitnessConsistencyError)
from .evaluate import ProfitReport, brute_force_best_cycle, evaluate_cycle
from .kernels import BACKEND
from .snapshot import (ExchangeGraph, NodeId, Quote, SnapshotStats, build_graph,
                       gen_synthetic, parse_snapshot, snapshot_stats,
                       write_snapshot_csv)
from .transform import (TransformedGraph, TransformParams, UniquenessStats,
                        backmap_cycle, transform, uniqueness_stats)
from .triangle import (TriangleResult, TripartiteGraph, build_tripartite,
                       min_triangle)
from .witness import (SamplerConfig, WitnessMatrix, reconstruct_cycle,
                      unique_witnesses, witness_matrix)

__version__ = "0.1.0"

__all__ = [
    "ArbcyclesError", "BACKEND", "CycleReport", "DistanceMatrix",
    "ExchangeGraph", "INF", "NodeId", "ProfitReport", "Quote", "SamplerConfig",
    "SnapshotFormatError", "SnapshotStats", "TransformParams",
    "TransformedGraph", "TriangleResult", "TripartiteGraph", "UniquenessStats",
    "WeightRangeError", "WitnessConsistencyError", "WitnessMatrix",
    "apsp_by_squaring", "backmap_cycle", "brute_force_best_cycle",
    "build_graph", "build_tripartite", "evaluate_cycle",
    "floyd_warshall_min_cycle", "gen_synthetic", "karp_min_cycle_weight",
    "min_plus_product", "min_triangle", "parse_snapshot", "reconstruct_cycle",
    "snapshot_stats", "transform", "uniqueness_stats", "unique_witnesses",
    "witness_matrix", "write_snapshot_csv",
]
