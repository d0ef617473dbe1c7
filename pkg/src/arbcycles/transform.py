"""Rate-to-integer weight transformation.

Maximizing a rate product becomes minimizing an integer weight sum in four
steps per edge: take the reciprocal of the rate, scale so the smallest value
is 1, take the natural log, then multiply by an integer `multiplier` and
round up (clamped to at least 1).  Larger multipliers keep more of the
original ordering distinct at the cost of a larger weight range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .apsp import INF
from .errors import WeightRangeError
from .snapshot import ExchangeGraph


@dataclass(frozen=True)
class TransformParams:
    """Parameters needed to describe (and audit) one transformation run."""

    multiplier: int
    scale: float          # 1 / min_reciprocal; lifts all reciprocals to >= 1
    min_reciprocal: float
    log_base: float = math.e


@dataclass
class TransformedGraph:
    """Integer-weighted view of an exchange graph plus the rate lookup."""

    n: int
    int_edges: list[tuple[int, int, int]]
    params: TransformParams
    rate_lookup: dict[tuple[int, int], float]

    def weight_map(self) -> dict[tuple[int, int], int]:
        return {(u, v): w for u, v, w in self.int_edges}

    @property
    def max_weight(self) -> int:
        return max(w for _, _, w in self.int_edges)


@dataclass(frozen=True)
class UniquenessStats:
    total_edges: int
    distinct_original: int
    distinct_transformed: int
    fraction: float


def _pipeline(rates: np.ndarray, multiplier: int):
    if multiplier < 1 or int(multiplier) != multiplier:
        raise ValueError(f"multiplier must be a positive integer, got {multiplier}")
    if (rates <= 0).any():
        raise ValueError("all rates must be positive")
    reciprocal = 1.0 / rates
    min_reciprocal = float(reciprocal.min())
    scale = 1.0 / min_reciprocal
    with np.errstate(over="ignore"):  # inf weights are caught by the range guard
        logs = np.log(scale * reciprocal)
        scaled = np.ceil(multiplier * logs)
    return scaled, TransformParams(int(multiplier), scale, min_reciprocal)


def transform(graph: ExchangeGraph, multiplier: int) -> TransformedGraph:
    """Apply the four-step transformation to every edge of the graph.

    Raises WeightRangeError when the largest integer weight would be too big
    for n-term path sums to stay safely below the INF sentinel.
    """
    rates = np.array([r for _, _, r in graph.edges], dtype=np.float64)
    scaled, params = _pipeline(rates, multiplier)
    bound = INF // max(graph.n, 2)
    if scaled.max() > bound:
        raise WeightRangeError(
            f"multiplier {multiplier} yields max weight {scaled.max():.3g} "
            f"above the safe bound {bound}"
        )
    weights = np.maximum(scaled.astype(np.int64), 1)
    int_edges = [
        (u, v, int(w)) for (u, v, _), w in zip(graph.edges, weights)
    ]
    rate_lookup = {(u, v): r for u, v, r in graph.edges}
    return TransformedGraph(n=graph.n, int_edges=int_edges, params=params,
                            rate_lookup=rate_lookup)


def uniqueness_stats(graph: ExchangeGraph, multiplier: int) -> UniquenessStats:
    """How many distinct rates stay distinct after the transformation."""
    rates = np.array([r for _, _, r in graph.edges], dtype=np.float64)
    scaled, _ = _pipeline(rates, multiplier)
    weights = np.maximum(scaled, 1.0)
    distinct_original = len(np.unique(rates))
    distinct_transformed = len(np.unique(weights))
    return UniquenessStats(
        total_edges=len(rates),
        distinct_original=distinct_original,
        distinct_transformed=distinct_transformed,
        fraction=distinct_transformed / distinct_original,
    )


def backmap_cycle(nodes, tgraph: TransformedGraph):
    """Original rates along a transformed cycle and their product.

    nodes must list at least two nodes; consecutive pairs (including the
    wrap-around) must be edges known to the rate lookup.
    """
    if len(nodes) < 2:
        raise ValueError("a cycle needs at least two nodes")
    rates = []
    for i, a in enumerate(nodes):
        b = nodes[(i + 1) % len(nodes)]
        try:
            rates.append(tgraph.rate_lookup[(a, b)])
        except KeyError:
            raise ValueError(f"edge ({a}, {b}) missing from rate lookup") from None
    product = 1.0
    for r in rates:
        product *= r
    return rates, product
