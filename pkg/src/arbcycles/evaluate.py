"""Profit evaluation against original rates, and the brute-force oracle.

The oracle enumerates every simple cycle up to a length cap via
canonical-start DFS (each cycle visited once, smallest node first) and is
deliberately independent of the matrix machinery, so it can vouch for it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .apsp import CycleReport
from .snapshot import ExchangeGraph
from .transform import TransformedGraph

DEFAULT_NODE_CAP = 24


@dataclass
class ProfitReport:
    cycle: CycleReport
    interpretation: list[str]
    is_profitable: bool

    def to_dict(self, labels=None) -> dict:
        nodes = self.cycle.nodes
        path = [labels(i) for i in nodes] if labels else list(nodes)
        if path:
            path.append(path[0])
        return {
            "path": path,
            "product": self.cycle.product,
            "profit_pct": self.cycle.profit_pct,
            "is_profitable": self.is_profitable,
            "sum_weight": self.cycle.sum_weight,
            "steps": list(self.interpretation),
        }


def _describe_step(a, b, rate) -> str:
    if a.market == b.market:
        return f"Trade {a.currency} for {b.currency} in {a.market} at rate {rate:.10g}"
    return (
        f"Sell {a.currency} in {a.market} and buy {b.currency} in {b.market} "
        f"via a common base currency"
    )


def evaluate_cycle(nodes, graph: ExchangeGraph, sum_weight=None) -> ProfitReport:
    """Profit report for a node cycle: rate product, percentage, trade steps.

    nodes must form a cycle in the graph (at least two nodes, every
    consecutive pair an edge, wrap-around included).
    """
    if len(nodes) < 2:
        raise ValueError("a cycle needs at least two nodes")
    rates = graph.rate_map()
    product = 1.0
    steps = []
    for i, a in enumerate(nodes):
        b = nodes[(i + 1) % len(nodes)]
        rate = rates.get((a, b))
        if rate is None:
            raise ValueError(f"({a}, {b}) is not an edge of the graph")
        product *= rate
        steps.append(_describe_step(graph.nodes[a], graph.nodes[b], rate))
    report = CycleReport(nodes=list(nodes), sum_weight=sum_weight, product=product)
    return ProfitReport(cycle=report, interpretation=steps,
                        is_profitable=bool(product > 1.0))


def _weighted_view(graph, objective):
    """(n, adjacency, int weight map) for the requested objective."""
    if objective == "min_sum":
        if not isinstance(graph, TransformedGraph):
            raise ValueError("min_sum needs integer weights; pass a TransformedGraph")
        edges = graph.int_edges
        n = graph.n
    elif objective == "max_product":
        if isinstance(graph, TransformedGraph):
            edges = [(u, v, graph.rate_lookup[(u, v)]) for u, v, _ in graph.int_edges]
            n = graph.n
        elif isinstance(graph, ExchangeGraph):
            edges = graph.edges
            n = graph.n
        else:
            raise ValueError(f"unsupported graph type {type(graph).__name__}")
    else:
        raise ValueError(f"unknown objective {objective!r}")
    adj = [[] for _ in range(n)]
    for u, v, w in edges:
        adj[u].append((v, w))
    for lst in adj:
        lst.sort()
    return n, adj


def brute_force_best_cycle(graph, max_len=9, objective="min_sum", min_length=2,
                           node_cap=DEFAULT_NODE_CAP):
    """Optimal simple cycle by exhaustive enumeration.

    Enumerates all simple cycles with length in [min_length, max_len] and
    returns the one optimizing the objective (CycleReport, or None when no
    qualifying cycle exists).  Ties break lexicographically on the canonical
    node sequence.  Guarded by node_cap since enumeration is exponential.
    """
    n, adj = _weighted_view(graph, objective)
    if n > node_cap:
        raise ValueError(f"{n} nodes exceeds the brute-force cap of {node_cap}")
    if min_length < 2:
        raise ValueError("min_length must be at least 2")
    if max_len < min_length:
        raise ValueError("max_len must be at least min_length")

    minimize = objective == "min_sum"
    start_unit = 0 if minimize else 1.0
    best = None  # (value, nodes tuple)
    path = []
    on_path = [False] * n

    def visit(start, x, acc):
        nonlocal best
        for y, w in adj[x]:
            if y == start and len(path) >= min_length:
                value = acc + w if minimize else acc * w
                key = (value if minimize else -value, tuple(path))
                if best is None or key < best:
                    best = key
            elif y > start and not on_path[y] and len(path) < max_len:
                path.append(y)
                on_path[y] = True
                visit(start, y, acc + w if minimize else acc * w)
                path.pop()
                on_path[y] = False

    for s in range(n):
        path = [s]
        on_path[s] = True
        visit(s, s, start_unit)
        on_path[s] = False

    if best is None:
        return None
    key, nodes = best
    nodes = list(nodes)
    if minimize:
        report = CycleReport(nodes=nodes, sum_weight=int(key))
        lookup = getattr(graph, "rate_lookup", None)
        if lookup:
            try:
                product = 1.0
                for i, a in enumerate(nodes):
                    product *= lookup[(a, nodes[(i + 1) % len(nodes)])]
                report.product = product
                report.profit_pct = (product - 1.0) * 100.0
            except KeyError:
                pass
        return report
    product = -key
    sum_weight = None
    if isinstance(graph, TransformedGraph):
        wmap = graph.weight_map()
        sum_weight = sum(wmap[(a, nodes[(i + 1) % len(nodes)])] for i, a in enumerate(nodes))
    return CycleReport(nodes=nodes, sum_weight=sum_weight, product=product)
