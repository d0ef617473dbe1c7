"""Shared fixtures and random-graph helpers."""

import numpy as np
import pytest

from arbcycles.transform import TransformedGraph, TransformParams


def random_int_digraph(rng, n, density, max_weight=20):
    """Random simple digraph as an (u, v, weight) edge list, weights >= 1."""
    edges = []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < density:
                edges.append((u, v, int(rng.integers(1, max_weight + 1))))
    return edges


def int_graph(n, edges):
    """Wrap raw integer edges in a TransformedGraph for the oracle APIs."""
    return TransformedGraph(n=n, int_edges=list(edges),
                            params=TransformParams(1, 1.0, 1.0), rate_lookup={})


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
