"""Numpy implementations of the min-plus kernels.

Used when the compiled extension is unavailable; same contracts as
arbcycles._minplus.
"""

import numpy as np


def min_plus(a, b, inf):
    """C[i, j] = min_k a[i, k] + b[k, j], saturating at inf."""
    n, kn = a.shape
    if b.shape[0] != kn:
        raise ValueError("inner dimensions differ")
    out = np.empty((n, b.shape[1]), dtype=np.int64)
    for i in range(n):
        sums = a[i, :, None] + b  # <= 2*inf, no overflow
        out[i] = sums.min(axis=0)
    np.minimum(out, inf, out=out)
    return out


def min_plus_witness(a, b, inf):
    """min_plus plus the smallest k attaining each minimum (-1 at inf)."""
    n, kn = a.shape
    if b.shape[0] != kn:
        raise ValueError("inner dimensions differ")
    out = np.empty((n, b.shape[1]), dtype=np.int64)
    wit = np.empty((n, b.shape[1]), dtype=np.int64)
    for i in range(n):
        sums = a[i, :, None] + b
        wit[i] = sums.argmin(axis=0)  # first occurrence = smallest k
        out[i] = sums[wit[i], np.arange(b.shape[1])]
    saturated = out >= inf
    out[saturated] = inf
    wit[saturated] = -1
    return out, wit


def floyd_warshall(dist, nxt, via, inf):
    """In-place Floyd-Warshall with successor tracking (see _minplus)."""
    n = dist.shape[0]
    idx = np.arange(n)
    for k in range(n):
        through = dist[:, k, None] + dist[None, k, :]
        better = through < dist
        if not better.any():
            continue
        dist[better] = through[better]
        nxt[better] = np.broadcast_to(nxt[:, k, None], (n, n))[better]
        diag_better = better[idx, idx]
        via[diag_better] = k
