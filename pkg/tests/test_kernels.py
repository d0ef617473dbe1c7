"""Parity between the compiled kernels and the numpy fallback."""

import numpy as np
import pytest

from arbcycles import INF
from arbcycles import _minplus_py as fallback

compiled = pytest.importorskip("arbcycles._minplus",
                               reason="compiled extension not built")


def random_matrix(rng, rows, cols, inf_density=0.35):
    m = rng.integers(0, 100, (rows, cols)).astype(np.int64)
    m[rng.random((rows, cols)) < inf_density] = INF
    return m


def test_min_plus_parity(rng):
    for _ in range(30):
        n, k, m = (int(x) for x in rng.integers(1, 40, 3))
        a = random_matrix(rng, n, k)
        b = random_matrix(rng, k, m)
        assert np.array_equal(compiled.min_plus(a, b, INF),
                              fallback.min_plus(a, b, INF))


def test_min_plus_witness_parity(rng):
    for _ in range(30):
        n, k, m = (int(x) for x in rng.integers(1, 40, 3))
        a = random_matrix(rng, n, k)
        b = random_matrix(rng, k, m)
        c1, w1 = compiled.min_plus_witness(a, b, INF)
        c2, w2 = fallback.min_plus_witness(a, b, INF)
        assert np.array_equal(c1, c2)
        assert np.array_equal(w1, w2)


def test_floyd_warshall_parity(rng):
    for _ in range(20):
        n = int(rng.integers(1, 30))
        base = random_matrix(rng, n, n, inf_density=0.5)
        np.fill_diagonal(base, INF)
        states = []
        for impl in (compiled, fallback):
            dist = base.copy()
            nxt = np.full((n, n), -1, dtype=np.int64)
            edge = dist < INF
            nxt[edge] = np.broadcast_to(np.arange(n), (n, n))[edge]
            via = np.full(n, -1, dtype=np.int64)
            impl.floyd_warshall(dist, nxt, via, INF)
            states.append((dist, nxt, via))
        for left, right in zip(*states):
            assert np.array_equal(left, right)


def test_dimension_mismatch_raises(rng):
    a = random_matrix(rng, 3, 4)
    b = random_matrix(rng, 3, 4)
    with pytest.raises(ValueError):
        compiled.min_plus(a, b, INF)
    with pytest.raises(ValueError):
        fallback.min_plus(a, b, INF)
