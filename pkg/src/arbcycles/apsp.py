"""Integer distance matrices and minimum-weight-cycle search.

Provides the min-plus (distance) product with optional witness capture,
all-pairs shortest paths by repeated squaring, a Floyd-Warshall minimum
cycle baseline with path reconstruction, and the classic reduction of the
minimum cycle to "edge weight plus shortest return path".

All matrices are square numpy int64 arrays using INF as the missing-path
sentinel.  INF is int64 max / 4 so that a three-term sum of sentinel values
cannot overflow.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ArbcyclesError

INF = np.iinfo(np.int64).max // 4


@dataclass
class DistanceMatrix:
    """Square nonnegative int64 matrix with INF marking missing paths."""

    entries: np.ndarray

    def __post_init__(self):
        self.entries = np.ascontiguousarray(self.entries, dtype=np.int64)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError("distance matrix must be square")

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_edges(cls, n, edges, diagonal=0):
        """Adjacency matrix from (u, v, weight) triples; INF elsewhere."""
        m = np.full((n, n), INF, dtype=np.int64)
        np.fill_diagonal(m, diagonal)
        for u, v, w in edges:
            if u == v:
                raise ValueError("self loops are not allowed")
            if w < 0:
                raise ValueError("negative weights are not supported")
            m[u, v] = w
        return cls(m)

    @classmethod
    def min_plus_identity(cls, n):
        """Zero diagonal, INF elsewhere: the identity of the min-plus product."""
        m = np.full((n, n), INF, dtype=np.int64)
        np.fill_diagonal(m, 0)
        return cls(m)

    def copy(self) -> "DistanceMatrix":
        return DistanceMatrix(self.entries.copy())

    def to_text(self) -> str:
        """Row-major text form: first line n, then n rows, INF spelled `inf`."""
        lines = [str(self.n)]
        for row in self.entries:
            lines.append(" ".join("inf" if v >= INF else str(int(v)) for v in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DistanceMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        n = int(lines[0])
        if len(lines) != n + 1:
            raise ValueError(f"expected {n} rows, got {len(lines) - 1}")
        m = np.full((n, n), INF, dtype=np.int64)
        for i, line in enumerate(lines[1:]):
            cells = line.split()
            if len(cells) != n:
                raise ValueError(f"row {i}: expected {n} entries, got {len(cells)}")
            for j, cell in enumerate(cells):
                m[i, j] = INF if cell == "inf" else int(cell)
        return cls(m)


@dataclass
class CycleReport:
    """A cycle as a node sequence plus its weight under both views.

    nodes lists each cycle node once; the edge back to nodes[0] is implicit.
    sum_weight is the transformed integer weight, product the original rate
    product when rates are known.
    """

    nodes: list[int]
    sum_weight: int | None = None
    product: float | None = None
    profit_pct: float | None = field(default=None)

    def __post_init__(self):
        if self.product is not None and self.profit_pct is None:
            self.profit_pct = (self.product - 1.0) * 100.0

    def __len__(self) -> int:
        return len(self.nodes)


def canonical_rotation(nodes):
    """Rotate a cycle's node list so the smallest index comes first."""
    pivot = nodes.index(min(nodes))
    return list(nodes[pivot:]) + list(nodes[:pivot])


def min_plus_product(a: DistanceMatrix, b: DistanceMatrix, capture_witnesses=False):
    """Distance product C[u][v] = min_k a[u][k] + b[k][v].

    Returns (C, W) where W is the witness matrix (smallest k attaining each
    minimum, -1 for INF entries) when capture_witnesses is set, else None.
    """
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    if capture_witnesses:
        c, w = kernels.min_plus_witness(a.entries, b.entries, INF)
        return DistanceMatrix(c), w
    return DistanceMatrix(kernels.min_plus(a.entries, b.entries, INF)), None


def apsp_by_squaring(adj: DistanceMatrix) -> DistanceMatrix:
    """Exact all-pairs shortest distances by repeated min-plus squaring.

    The input adjacency must have a zero diagonal; ceil(log2 n) squarings
    reach the fixed point (stops early once squaring no longer changes
    anything).
    """
    if (np.diagonal(adj.entries) != 0).any():
        raise ValueError("adjacency for APSP must have a zero diagonal")
    if (adj.entries < 0).any():
        raise ValueError("negative weights are not supported")
    d = adj.entries
    rounds = max(0, int(adj.n - 1).bit_length())
    for _ in range(rounds):
        d2 = kernels.min_plus(d, d, INF)
        if np.array_equal(d2, d):
            break
        d = d2
    return DistanceMatrix(d)


def _run_floyd_warshall(adj: DistanceMatrix):
    """Run FW with an INF diagonal; returns (dist, nxt, via) arrays."""
    n = adj.n
    dist = adj.entries.copy()
    np.fill_diagonal(dist, INF)
    nxt = np.full((n, n), -1, dtype=np.int64)
    has_edge = dist < INF
    nxt[has_edge] = np.broadcast_to(np.arange(n), (n, n))[has_edge]
    via = np.full(n, -1, dtype=np.int64)
    kernels.floyd_warshall(dist, nxt, via, INF)
    return dist, nxt, via


def _successor_path(nxt, a, b):
    """Node sequence a..b following the successor matrix."""
    path = [a]
    x = a
    while x != b:
        x = int(nxt[x, b])
        if x < 0 or len(path) > nxt.shape[0]:
            raise ArbcyclesError("successor matrix does not reach target")
        path.append(x)
    return path


def _edge_map(edges):
    return {(int(u), int(v)): int(w) for u, v, w in edges}


def _out_adjacency(n, edges):
    out = [[] for _ in range(n)]
    for u, v, w in edges:
        out[int(u)].append((int(v), int(w)))
    for lst in out:
        lst.sort()
    return out


def _dijkstra_skip_first_hop(out_adj, src, dst, skipped):
    """Shortest src->dst distance and path, forbidding src->skipped as the
    opening edge.  Equivalent to deleting edge (src, skipped) because simple
    paths from src can only use it first."""
    n = len(out_adj)
    dist = [INF] * n
    prev = [-1] * n
    dist[src] = 0
    heap = [(0, src)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        if x == dst:
            break
        for y, w in out_adj[x]:
            if x == src and y == skipped:
                continue
            nd = d + w
            if nd < dist[y]:
                dist[y] = nd
                prev[y] = x
                heapq.heappush(heap, (nd, y))
    if dist[dst] >= INF:
        return None, None
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    path.reverse()
    return dist[dst], path


def _return_path_avoiding_reverse(emap, out_adj, dist, nxt, v, u):
    """Cheapest simple path v->u that does not consist of the edge (v, u).

    Closing edge (u, v) with such a path yields a simple cycle of length
    >= 3.  When the plain shortest path is cheaper than the direct edge it
    cannot use that edge at all, so the precomputed matrix answer stands;
    only the tie case needs a constrained Dijkstra rerun.
    """
    w_rev = emap.get((v, u))
    if w_rev is None or dist[v, u] < w_rev:
        if dist[v, u] >= INF:
            return None, None
        return int(dist[v, u]), _successor_path(nxt, v, u)
    return _dijkstra_skip_first_hop(out_adj, v, u, u)


def floyd_warshall_min_cycle(adj: DistanceMatrix, min_length=2):
    """Minimum weight cycle via Floyd-Warshall with an INF diagonal.

    Returns a CycleReport with the node sequence (rotated so the smallest
    index leads) or None when no qualifying cycle exists.  min_length 3
    excludes back-and-forth two-cycles; the result is then the exact minimum
    over simple cycles with at least three edges.
    """
    if min_length not in (2, 3):
        raise ValueError("min_length must be 2 or 3")
    n = adj.n
    if n == 0:
        return None
    dist, nxt, via = _run_floyd_warshall(adj)
    edges = [
        (i, j, int(adj.entries[i, j]))
        for i in range(n)
        for j in range(n)
        if i != j and adj.entries[i, j] < INF
    ]
    emap = _edge_map(edges)

    if min_length == 2:
        diag = np.diagonal(dist)
        u = int(np.argmin(diag))
        best = int(diag[u])
        if best >= INF:
            return None
        k = int(via[u])
        nodes = _successor_path(nxt, u, k)[:-1] + _successor_path(nxt, k, u)[:-1]
        return _checked_cycle_report(nodes, emap, best)

    out_adj = _out_adjacency(n, edges)
    best = None
    for u, v, w in edges:
        ret, path = _return_path_avoiding_reverse(emap, out_adj, dist, nxt, v, u)
        if ret is None:
            continue
        total = w + ret
        if best is None or total < best[0]:
            best = (total, [(u, path)])
        elif total == best[0]:
            best[1].append((u, path))
    if best is None:
        return None
    total, variants = best
    sequences = sorted(canonical_rotation([u] + path[:-1]) for u, path in variants)
    return _checked_cycle_report(sequences[0], emap, total, rotate=False)


def _checked_cycle_report(nodes, emap, expected_sum, rotate=True):
    """Validate a closed node walk against the edge map and wrap it."""
    total = 0
    for i, a in enumerate(nodes):
        b = nodes[(i + 1) % len(nodes)]
        w = emap.get((a, b))
        if w is None:
            raise ArbcyclesError(f"reconstructed walk uses missing edge ({a}, {b})")
        total += w
    if total != expected_sum:
        raise ArbcyclesError(
            f"reconstructed walk weighs {total}, expected {expected_sum}"
        )
    if len(set(nodes)) != len(nodes):
        raise ArbcyclesError("minimum cycle reconstruction produced a repeated node")
    return CycleReport(nodes=canonical_rotation(nodes) if rotate else list(nodes),
                       sum_weight=expected_sum)


def karp_min_cycle_weight(d: DistanceMatrix, edges, min_length=2):
    """Minimum cycle weight as min over edges (u, v) of w(u, v) + D[v][u].

    D must hold exact shortest distances.  Returns the integer weight or
    None when the graph is acyclic.  min_length 3 replaces the plain return
    distance with the cheapest return path that is not the reverse edge
    itself, which keeps the result exact for simple cycles of length >= 3.
    """
    if min_length not in (2, 3):
        raise ValueError("min_length must be 2 or 3")
    emap = _edge_map(edges)
    best = None
    if min_length == 2:
        for (u, v), w in emap.items():
            ret = int(d.entries[v, u])
            if ret >= INF:
                continue
            total = w + ret
            if best is None or total < best:
                best = total
        return best
    out_adj = _out_adjacency(d.n, edges)
    for (u, v), w in sorted(emap.items()):
        w_rev = emap.get((v, u))
        if w_rev is None or d.entries[v, u] < w_rev:
            ret = int(d.entries[v, u])
            if ret >= INF:
                continue
        else:
            ret, _ = _dijkstra_skip_first_hop(out_adj, v, u, u)
            if ret is None:
                continue
        total = w + ret
        if best is None or total < best:
            best = total
    return best
