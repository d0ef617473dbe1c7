"""The four-step rate-to-integer transformation."""

import math

import numpy as np
import pytest

from arbcycles import (WeightRangeError, backmap_cycle, brute_force_best_cycle,
                       build_graph, gen_synthetic, transform, uniqueness_stats)
from arbcycles.snapshot import Quote


def graph_with_rates(rates):
    """One market, a chain of quotes carrying the given rates."""
    quotes = [Quote("M1", f"A{i}", f"A{i + 1}", rate) for i, rate in enumerate(rates)]
    return build_graph(quotes, seed=0)


def weights_for_rates(tgraph, graph_rates):
    by_rate = {}
    for (u, v), rate in tgraph.rate_lookup.items():
        w = tgraph.weight_map()[(u, v)]
        by_rate.setdefault(rate, w)
    return [by_rate[r] for r in graph_rates]


class TestTransform:
    def test_worked_example(self):
        # rates {2.0, 0.5}: reciprocals {0.5, 2.0}, scale 2, logs {0, ln 4},
        # multiplier 100 -> ceil{0, 138.63} -> clamped {1, 139}
        graph = graph_with_rates([2.0, 0.5])
        quoted = {(u, v) for u, v, _ in graph.edges[:2]}
        tgraph = transform(graph, 100)
        wmap = tgraph.weight_map()
        by_rate = {tgraph.rate_lookup[e]: wmap[e] for e in quoted}
        assert by_rate[2.0] == 1
        assert by_rate[0.5] == 139
        assert tgraph.params.multiplier == 100
        assert tgraph.params.scale == pytest.approx(2.0)

    def test_uniform_rates_all_unit(self):
        quotes = [Quote("M1", "A", "B", 3.0), Quote("M1", "C", "D", 3.0),
                  Quote("M1", "E", "F", 3.0)]
        graph = build_graph(quotes, spread_range=(0.999, 0.999), seed=0)
        tgraph = transform(graph, 1000)
        forward = [w for (u, v, w), (_, _, r) in zip(tgraph.int_edges, graph.edges)
                   if r == 3.0]
        assert set(forward) == {1}

    def test_weights_positive_and_bounded(self):
        graph = build_graph(gen_synthetic(2, 10, 0.6, seed=6), seed=6)
        tgraph = transform(graph, 10_000_000)
        weights = [w for _, _, w in tgraph.int_edges]
        assert min(weights) >= 1
        assert max(weights) == tgraph.max_weight

    def test_monotone_order_reversal(self):
        graph = build_graph(gen_synthetic(1, 8, 1.0, seed=2), seed=2)
        tgraph = transform(graph, 10_000_000)
        wmap = tgraph.weight_map()
        items = sorted(tgraph.rate_lookup.items(), key=lambda kv: kv[1])
        for (e1, r1), (e2, r2) in zip(items, items[1:]):
            if r2 > r1:
                assert wmap[e2] <= wmap[e1]

    def test_overflow_guard(self):
        graph = graph_with_rates([1e300, 1e-300])
        with pytest.raises(WeightRangeError):
            transform(graph, 10**15)

    def test_rejects_bad_multiplier(self):
        graph = graph_with_rates([2.0])
        with pytest.raises(ValueError):
            transform(graph, 0)


class TestUniquenessStats:
    def test_three_distinct(self):
        graph = graph_with_rates([1.0, 2.0, 4.0])
        stats = uniqueness_stats(graph, 10**6)
        assert stats.distinct_transformed == stats.distinct_original
        assert stats.fraction == 1.0

    def test_single_quote(self):
        graph = build_graph([Quote("M1", "A", "B", 5.0)], seed=0)
        for multiplier in (1, 100, 10**7):
            stats = uniqueness_stats(graph, multiplier)
            assert stats.fraction == 1.0

    def test_bounds(self):
        graph = build_graph(gen_synthetic(2, 12, 0.5, seed=3), seed=3)
        stats = uniqueness_stats(graph, 1000)
        assert stats.distinct_transformed <= stats.distinct_original <= stats.total_edges
        assert 0.0 < stats.fraction <= 1.0

    def test_nondecreasing_along_integer_multiples(self):
        # distinctness is preserved when the multiplier grows by an integer
        # factor: an integer separating two scaled values keeps separating
        # them after scaling
        graph = build_graph(gen_synthetic(2, 12, 0.6, seed=14), seed=14)
        for base in (7, 100, 3001):
            counts = [uniqueness_stats(graph, base * f).distinct_transformed
                      for f in (1, 2, 10, 100, 1000)]
            assert counts == sorted(counts)


class TestBackmapCycle:
    def test_planted_rates(self):
        quotes = [Quote("M1", "A", "B", 10.0), Quote("M1", "B", "C", 5.0),
                  Quote("M1", "C", "A", 0.021)]
        graph = build_graph(quotes, seed=0)
        tgraph = transform(graph, 100)
        a, b, c = (graph.index_of("M1", x) for x in "ABC")
        rates, product = backmap_cycle([a, b, c], tgraph)
        assert rates == [10.0, 5.0, 0.021]
        assert product == pytest.approx(1.05)

    def test_two_cycle_spread(self):
        graph = build_graph([Quote("M1", "A", "B", 2.0)],
                            spread_range=(0.999, 0.999), seed=0)
        tgraph = transform(graph, 100)
        a = graph.index_of("M1", "A")
        b = graph.index_of("M1", "B")
        rates, product = backmap_cycle([a, b], tgraph)
        assert rates == [2.0, pytest.approx(0.4995)]
        assert product == pytest.approx(0.999)

    def test_single_node_rejected(self):
        graph = build_graph([Quote("M1", "A", "B", 2.0)], seed=0)
        tgraph = transform(graph, 100)
        with pytest.raises(ValueError, match="at least two"):
            backmap_cycle([0], tgraph)

    def test_missing_edge(self):
        graph = build_graph([Quote("M1", "A", "B", 2.0), Quote("M1", "C", "D", 3.0)],
                            seed=0)
        tgraph = transform(graph, 100)
        a = graph.index_of("M1", "A")
        c = graph.index_of("M1", "C")
        with pytest.raises(ValueError, match="missing"):
            backmap_cycle([a, c], tgraph)

    def test_round_trip_reproduces_rates_exactly(self):
        graph = build_graph(gen_synthetic(2, 8, 0.7, seed=19), seed=19)
        tgraph = transform(graph, 10**5)
        rates = graph.rate_map()
        for (u, v), rate in list(rates.items())[:50]:
            back, _ = backmap_cycle([u, v], tgraph) if (v, u) in rates else ([rate], None)
            assert back[0] == rate


def test_length_stratified_equivalence(rng):
    """Among equal-length cycles, the integer-minimal one nearly maximizes
    the rate product: within a factor exp(-len/multiplier) of the stratum
    best."""
    multiplier = 10**5
    checked = 0
    for seed in range(25):
        graph = build_graph(gen_synthetic(1, 7, 1.0, seed=seed), seed=seed)
        tgraph = transform(graph, multiplier)
        for length in (3, 4, 5):
            best_product = brute_force_best_cycle(
                graph, max_len=length, objective="max_product", min_length=length)
            min_sum = brute_force_best_cycle(
                tgraph, max_len=length, objective="min_sum", min_length=length)
            if best_product is None:
                assert min_sum is None
                continue
            assert min_sum.product is not None
            floor = best_product.product * math.exp(-length / multiplier)
            assert min_sum.product >= floor
            checked += 1
    assert checked >= 50
