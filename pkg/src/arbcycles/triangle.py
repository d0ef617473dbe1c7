"""Minimum weight cycle via minimum triangle in a tripartite auxiliary graph.

Three copies of the node set are wired so that every triangle corresponds to
a cycle of the original graph: a shortest path into the tail of one original
edge (the critical edge), the edge itself, and a shortest path back.  The
minimum triangle weight equals the minimum cycle weight when self-pairs are
admitted; excluding them structurally rules out back-and-forth two-cycles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .apsp import INF, DistanceMatrix
from .transform import TransformedGraph


@dataclass
class TripartiteGraph:
    """Auxiliary graph: parts one and two joined by distance edges, parts two
    and three by original edges, parts three and one by distance edges."""

    n: int
    critical_edges: list[tuple[int, int, int]]   # part 2 -> part 3, original edges
    dist_in: list[tuple[int, int, int]]          # part 1 -> part 2, D[u][v]
    dist_out: list[tuple[int, int, int]]         # part 3 -> part 1, D[u][v]
    distances: DistanceMatrix
    include_two_cycles: bool

    @property
    def num_vertices(self) -> int:
        return 3 * self.n

    @property
    def parts(self):
        base = range(self.n)
        return (base, base, base)


@dataclass(frozen=True)
class TriangleResult:
    """A minimum triangle: anchor node plus the critical edge it closes over."""

    anchor: int      # node in part 1
    edge_tail: int   # critical edge tail, part 2
    edge_head: int   # critical edge head, part 3
    total: int       # D[anchor][tail] + w(tail, head) + D[head][anchor]


def build_tripartite(tgraph: TransformedGraph, d: DistanceMatrix,
                     include_two_cycles=False) -> TripartiteGraph:
    """Construct the tripartite graph from integer edges and exact distances.

    Distance edges exist for every finite D[u][v]; self-pairs (u == v) are
    included only when include_two_cycles is set, since they are what lets a
    triangle collapse onto a single original edge pair.
    """
    if d.n != tgraph.n:
        raise ValueError(f"dimension mismatch: graph has {tgraph.n} nodes, D is {d.n}")
    finite = d.entries < INF
    if not include_two_cycles:
        finite = finite & ~np.eye(d.n, dtype=bool)
    pairs = np.argwhere(finite)
    dist_edges = [(int(u), int(v), int(d.entries[u, v])) for u, v in pairs]
    return TripartiteGraph(
        n=tgraph.n,
        critical_edges=list(tgraph.int_edges),
        dist_in=dist_edges,
        dist_out=list(dist_edges),
        distances=d,
        include_two_cycles=include_two_cycles,
    )


def min_triangle(tri: TripartiteGraph):
    """Scan all (anchor, critical edge) pairs for the minimum triangle.

    Returns a TriangleResult or None when no triangle exists.  Ties break by
    ascending (anchor, tail, head).  Without two-cycles the anchor must
    differ from both critical-edge endpoints, so the corresponding closed
    walk visits at least three distinct positions.
    """
    d = tri.distances.entries
    n = tri.n
    big = 3 * INF
    best = None
    for tail, head, w in tri.critical_edges:
        totals = d[:, tail] + d[head, :] + w
        invalid = (d[:, tail] >= INF) | (d[head, :] >= INF)
        if not tri.include_two_cycles:
            invalid[tail] = True
            invalid[head] = True
        if invalid.all():
            continue
        masked = np.where(invalid, big, totals)
        anchor = int(masked.argmin())  # first minimum = smallest anchor
        candidate = (int(masked[anchor]), anchor, tail, head)
        if best is None or candidate < best:
            best = candidate
    if best is None:
        return None
    total, anchor, tail, head = best
    return TriangleResult(anchor=anchor, edge_tail=tail, edge_head=head, total=total)
