"""Witness matrices for distance products and cycle backtracking.

A witness for entry (u, v) of the product C = D * D is an index k with
C[u][v] = D[u][k] + D[k][v].  Witnesses let the exact node sequence behind a
minimum triangle be recovered by recursively splitting shortest-path legs.

The sampler follows the randomized scheme: where a column subset contains
exactly one witness, that witness can be read off bit by bit from sliced
products; repeatedly sampling subsets of shrinking size isolates witnesses
with high probability, and a deterministic linear scan completes whatever is
left so the operation is total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .apsp import INF, DistanceMatrix, canonical_rotation
from .errors import WitnessConsistencyError
from .transform import TransformedGraph


@dataclass
class WitnessMatrix:
    """n x n witness indices; -1 marks entries with an infinite product."""

    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class SamplerConfig:
    """Controls the randomized witness sampler.

    witness_constant scales the number of subsets drawn per round
    (subsets = ceil(witness_constant * log2 n)); rounds halve the subset
    size each time, ceil(log2 n) rounds in total.
    """

    witness_constant: float = 2.0
    seed: int = 0

    def __post_init__(self):
        if self.witness_constant < 1:
            raise ValueError("witness_constant must be at least 1")

    def rounds(self, n: int) -> int:
        return max(1, math.ceil(math.log2(max(n, 2))))

    def subsets_per_round(self, n: int) -> int:
        return max(1, math.ceil(self.witness_constant * math.log2(max(n, 2))))


def _identity_sums(d: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """D[u, k] + D[k, v] for k = candidates[u, v] (out-of-range entries use 0)."""
    n = d.shape[0]
    k = np.where((candidates >= 0) & (candidates < n), candidates, 0)
    return d[np.arange(n)[:, None], k] + d[k, np.arange(n)[None, :]]


def unique_witnesses(d: DistanceMatrix, columns):
    """Bit-sliced witness recovery over a column subset.

    Returns (candidates, product) where product is the distance product
    restricted to the given columns and candidates holds, for each entry
    whose witness within the subset is unique, that witness index (node
    indices are assembled 1-based from the bit slices, then shifted back).
    Entries with zero or several witnesses generally assemble to garbage;
    every candidate is therefore verified against the restricted product
    here, and failures are returned as -1.
    """
    cols = np.unique(np.asarray(list(columns), dtype=np.int64))
    if cols.size == 0:
        raise ValueError("column subset must be nonempty")
    n = d.n
    if cols[0] < 0 or cols[-1] >= n:
        raise ValueError("column indices out of range")
    entries = d.entries
    product = kernels.min_plus(
        np.ascontiguousarray(entries[:, cols]),
        np.ascontiguousarray(entries[cols, :]),
        INF,
    )
    finite = product < INF
    assembled = np.zeros((n, n), dtype=np.int64)
    for bit in range(int(n).bit_length()):
        slice_cols = cols[((cols + 1) >> bit) & 1 == 1]
        if slice_cols.size == 0:
            continue
        sliced = kernels.min_plus(
            np.ascontiguousarray(entries[:, slice_cols]),
            np.ascontiguousarray(entries[slice_cols, :]),
            INF,
        )
        assembled |= ((sliced == product) & finite).astype(np.int64) << bit
    candidates = assembled - 1
    valid = finite & (candidates >= 0) & (candidates < n)
    valid &= np.isin(candidates, cols)
    valid &= _identity_sums(entries, candidates) == product
    return np.where(valid, candidates, -1), DistanceMatrix(product)


def witness_matrix(d: DistanceMatrix, cfg: SamplerConfig | None = None) -> WitnessMatrix:
    """Complete witness matrix for C = D * D, deterministic given the seed.

    Runs the randomized rounds first (each accepted candidate is verified
    against the full product), then fills whatever remains with the smallest
    index satisfying the witness identity.
    """
    cfg = cfg or SamplerConfig()
    n = d.n
    entries = d.entries
    full = kernels.min_plus(entries, entries, INF)
    wit = np.full((n, n), -1, dtype=np.int64)
    resolved = full >= INF  # nothing to witness for unreachable entries

    rng = np.random.default_rng(cfg.seed)
    per_round = cfg.subsets_per_round(n)
    for r in range(1, cfg.rounds(n) + 1):
        size = max(1, n >> r)
        for _ in range(per_round):
            if resolved.all():
                break
            subset = rng.choice(n, size=size, replace=False)
            candidates, _ = unique_witnesses(d, subset)
            accept = (~resolved) & (candidates >= 0)
            accept &= _identity_sums(entries, candidates) == full
            wit[accept] = candidates[accept]
            resolved |= accept

    for u in np.flatnonzero(~resolved.all(axis=1)):
        missing = ~resolved[u]
        sums = entries[u][:, None] + entries  # sums[k, v]
        first = (sums == full[u]).argmax(axis=0)  # smallest witnessing k
        wit[u, missing] = first[missing]
    return WitnessMatrix(wit)


def _interior_witness(d: np.ndarray, a: int, b: int):
    """Smallest k distinct from both endpoints splitting leg (a, b) exactly."""
    sums = d[a, :] + d[:, b]
    valid = (sums == d[a, b]) & (d[a, :] < INF) & (d[:, b] < INF)
    valid[a] = False
    valid[b] = False
    hits = np.flatnonzero(valid)
    return int(hits[0]) if hits.size else None


def reconstruct_cycle(tri, d: DistanceMatrix, w: WitnessMatrix,
                      tgraph: TransformedGraph) -> list[int]:
    """Expand a TriangleResult into the explicit cycle node sequence.

    Both shortest-path legs are expanded by recursive witness splitting: a
    leg whose distance equals the stored weight of a direct edge, with a
    null or endpoint witness, is emitted as that edge; otherwise the leg
    splits at its witness.  The returned sequence starts at its smallest
    node index and its transformed edge weights sum exactly to tri.total.
    """
    weights = tgraph.weight_map()
    dist = d.entries
    wit = w.entries
    n = d.n
    edges: list[tuple[int, int]] = []

    def expand(a: int, b: int, depth: int):
        if a == b:
            return
        if depth > n:
            raise WitnessConsistencyError(f"leg ({a}, {b}) expansion exceeds depth {n}")
        k = int(wit[a, b])
        direct = weights.get((a, b))
        trivial = k < 0 or k == a or k == b
        if direct is not None and dist[a, b] == direct and trivial:
            edges.append((a, b))
            return
        if trivial:
            k = _interior_witness(dist, a, b)
            if k is None:
                if direct is not None and dist[a, b] == direct:
                    edges.append((a, b))
                    return
                raise WitnessConsistencyError(f"leg ({a}, {b}) admits no decomposition")
        if dist[a, k] + dist[k, b] != dist[a, b]:
            raise WitnessConsistencyError(
                f"witness {k} violates the identity for leg ({a}, {b})"
            )
        expand(a, k, depth + 1)
        expand(k, b, depth + 1)

    expand(tri.anchor, tri.edge_tail, 0)
    edges.append((tri.edge_tail, tri.edge_head))
    expand(tri.edge_head, tri.anchor, 0)

    total = sum(weights[e] for e in edges)
    if total != tri.total:
        raise WitnessConsistencyError(
            f"reconstructed walk weighs {total}, expected {tri.total}"
        )
    return canonical_rotation([a for a, _ in edges])
