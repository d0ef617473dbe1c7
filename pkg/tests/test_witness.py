"""Witness matrices and cycle reconstruction."""

import numpy as np
import pytest

from arbcycles import (INF, DistanceMatrix, SamplerConfig,
                       WitnessConsistencyError, apsp_by_squaring,
                       brute_force_best_cycle, build_tripartite, min_triangle,
                       min_plus_product, reconstruct_cycle, unique_witnesses,
                       witness_matrix)
from arbcycles.triangle import TriangleResult

from conftest import int_graph, random_int_digraph

TRIANGLE_EDGES = [(0, 1, 1), (1, 2, 2), (2, 0, 3)]


def cycle_distances_inf_diag():
    """APSP of the 3-cycle with an INF diagonal: every pair has exactly one
    proper intermediate witness."""
    d = apsp_by_squaring(DistanceMatrix.from_edges(3, TRIANGLE_EDGES, diagonal=0))
    entries = d.entries.copy()
    np.fill_diagonal(entries, INF)
    return DistanceMatrix(entries)


def random_matrix(rng, n, inf_density=0.3, diag="mixed"):
    m = rng.integers(0, 50, (n, n)).astype(np.int64)
    m[rng.random((n, n)) < inf_density] = INF
    if diag == "zero":
        np.fill_diagonal(m, 0)
    elif diag == "inf":
        np.fill_diagonal(m, INF)
    return DistanceMatrix(m)


def check_identity(d, w):
    c, _ = min_plus_product(d, d)
    finite = c.entries < INF
    assert (w.entries[~finite] == -1).all()
    assert (w.entries[finite] >= 0).all()
    n = d.n
    k = np.where(finite, np.maximum(w.entries, 0), 0)
    sums = d.entries[np.arange(n)[:, None], k] + d.entries[k, np.arange(n)[None, :]]
    assert (sums[finite] == c.entries[finite]).all()


class TestUniqueWitnesses:
    def test_single_node(self):
        d = DistanceMatrix(np.zeros((1, 1), dtype=np.int64))
        cand, product = unique_witnesses(d, [0])
        assert cand[0, 0] == 0
        assert product.entries[0, 0] == 0

    def test_unique_intermediate_recovered(self):
        cand, _ = unique_witnesses(cycle_distances_inf_diag(), [0, 1, 2])
        assert cand[0, 2] == 1
        assert cand[1, 0] == 2
        assert cand[2, 1] == 0

    def test_ambiguous_entry_flagged(self):
        # (1, 2) has witnesses 0 and 3; their 1-based ids OR to a non-witness
        m = np.full((4, 4), INF, dtype=np.int64)
        for u, v in [(1, 0), (0, 2), (1, 3), (3, 2)]:
            m[u, v] = 1
        cand, product = unique_witnesses(DistanceMatrix(m), range(4))
        assert product.entries[1, 2] == 2
        assert cand[1, 2] == -1

    def test_restricted_columns(self):
        d = cycle_distances_inf_diag()
        cand, product = unique_witnesses(d, [1])
        # only paths through node 1 are visible in this product
        assert product.entries[0, 2] == d.entries[0, 1] + d.entries[1, 2]
        assert cand[0, 2] == 1
        assert product.entries[2, 1] == INF

    def test_empty_columns_rejected(self):
        with pytest.raises(ValueError):
            unique_witnesses(cycle_distances_inf_diag(), [])


class TestWitnessMatrix:
    def test_identity_on_random_matrices(self, rng):
        for i in range(25):
            n = int(rng.integers(1, 33))
            diag = ("zero", "inf", "mixed")[i % 3]
            d = random_matrix(rng, n, diag=diag)
            check_identity(d, witness_matrix(d, SamplerConfig(seed=i)))

    def test_unique_values_forced(self):
        w = witness_matrix(cycle_distances_inf_diag(), SamplerConfig(seed=0))
        assert w.entries[0, 2] == 1
        assert w.entries[1, 0] == 2
        assert w.entries[2, 1] == 0

    def test_trivial_witnesses_on_identity_matrix(self):
        d = DistanceMatrix.min_plus_identity(4)
        w = witness_matrix(d, SamplerConfig(seed=1))
        assert np.array_equal(np.diagonal(w.entries), np.arange(4))
        off = ~np.eye(4, dtype=bool)
        assert (w.entries[off] == -1).all()

    def test_deterministic_given_seed(self, rng):
        d = random_matrix(rng, 20)
        a = witness_matrix(d, SamplerConfig(seed=5))
        b = witness_matrix(d, SamplerConfig(seed=5))
        assert np.array_equal(a.entries, b.entries)

    def test_sampler_config_validation(self):
        with pytest.raises(ValueError):
            SamplerConfig(witness_constant=0.5)


class TestReconstructCycle:
    def test_three_cycle(self):
        edges = TRIANGLE_EDGES
        g = int_graph(3, edges)
        d = apsp_by_squaring(DistanceMatrix.from_edges(3, edges, diagonal=0))
        w = witness_matrix(d, SamplerConfig(seed=0))
        tri = TriangleResult(anchor=2, edge_tail=0, edge_head=1, total=6)
        assert reconstruct_cycle(tri, d, w, g) == [0, 1, 2]

    def test_direct_legs_no_recursion(self):
        edges = [(0, 1, 4), (1, 2, 4), (2, 0, 4)]
        g = int_graph(3, edges)
        d = apsp_by_squaring(DistanceMatrix.from_edges(3, edges, diagonal=0))
        w = witness_matrix(d, SamplerConfig(seed=0))
        tri = min_triangle(build_tripartite(g, d, include_two_cycles=True))
        assert reconstruct_cycle(tri, d, w, g) == [0, 1, 2]

    def test_sum_matches_brute_force(self, rng):
        matched = 0
        for seed in range(40):
            n = int(rng.integers(2, 10))
            edges = random_int_digraph(rng, n, float(rng.uniform(0.2, 0.7)))
            g = int_graph(n, edges)
            d = apsp_by_squaring(DistanceMatrix.from_edges(n, edges, diagonal=0))
            tri = min_triangle(build_tripartite(g, d, include_two_cycles=True))
            if tri is None:
                continue
            w = witness_matrix(d, SamplerConfig(seed=seed))
            nodes = reconstruct_cycle(tri, d, w, g)
            wmap = g.weight_map()
            total = sum(wmap[(a, nodes[(i + 1) % len(nodes)])]
                        for i, a in enumerate(nodes))
            assert total == tri.total
            brute = brute_force_best_cycle(g, max_len=9, objective="min_sum",
                                           min_length=2)
            assert total == brute.sum_weight
            matched += 1
        assert matched >= 20

    def test_inconsistent_witness_detected(self):
        edges = [(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 0, 4)]
        g = int_graph(4, edges)
        d = apsp_by_squaring(DistanceMatrix.from_edges(4, edges, diagonal=0))
        w = witness_matrix(d, SamplerConfig(seed=0))
        # corrupt the witness used to split the leg (0, 2)
        w.entries[0, 2] = 3
        tri = TriangleResult(anchor=0, edge_tail=2, edge_head=3,
                             total=int(d.entries[0, 2]) + 3 + int(d.entries[3, 0]))
        with pytest.raises(WitnessConsistencyError):
            reconstruct_cycle(tri, d, w, g)
