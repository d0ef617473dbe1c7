"""Market snapshot ingestion and exchange-graph construction.

A snapshot is a list of one-directional ask quotes.  The graph built from it
has one node per (market, currency) pair, a forward edge per quote, a
spread-discounted reverse edge for every quote whose opposite direction is
not quoted explicitly, and bidirectional transfer edges between same-currency
nodes at different markets.

The synthetic generator produces snapshots with the same shape statistics as
a real multi-market feed and can plant a single profitable cycle while
guaranteeing every other cycle loses money.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import SnapshotFormatError

DEFAULT_SPREAD_RANGE = (0.99999, 0.999999)
DEFAULT_TRANSFER_RATE = 0.9999

CSV_HEADER = ("market", "base", "quote", "ask")

_CURRENCY_CODES = [
    "BTC", "ETH", "USD", "EUR", "XRP", "LTC", "BCH", "JPY", "KRW", "IDR",
    "USDT", "ADA", "XLM", "NEO", "EOS", "DASH", "XMR", "ETC", "ZEC", "SC",
]


@dataclass(frozen=True)
class Quote:
    """One directed ask price: units of `quote` received per unit of `base`."""

    market: str
    base: str
    quote: str
    ask: float


@dataclass(frozen=True)
class NodeId:
    index: int
    market: str
    currency: str

    @property
    def label(self) -> str:
        return f"{self.market}/{self.currency}"


@dataclass
class ExchangeGraph:
    """Directed simple graph over (market, currency) nodes with rate weights.

    spread_assignments maps each forward market edge (u, v) whose reverse was
    synthesized to the achieved round-trip factor: rate(u,v) * rate(v,u)
    equals the stored value exactly.
    """

    nodes: list[NodeId]
    edges: list[tuple[int, int, float]]
    spread_assignments: dict[tuple[int, int], float]
    transfer_rate: float

    @property
    def n(self) -> int:
        return len(self.nodes)

    def rate_map(self) -> dict[tuple[int, int], float]:
        return {(u, v): r for u, v, r in self.edges}

    def label(self, index: int) -> str:
        return self.nodes[index].label

    def index_of(self, market: str, currency: str) -> int:
        key = (market, currency)
        for node in self.nodes:
            if (node.market, node.currency) == key:
                return node.index
        raise KeyError(f"no node for {market}/{currency}")


@dataclass(frozen=True)
class SnapshotStats:
    n_markets: int
    n_currencies: int
    n_nodes: int
    n_edges: int
    min_rate: float
    max_rate: float


def _check_quote(q: Quote, where: str):
    if not q.market or not q.base or not q.quote:
        raise SnapshotFormatError(f"{where}: empty field in quote")
    if q.base == q.quote:
        raise SnapshotFormatError(f"{where}: base and quote currency are equal")
    if not math.isfinite(q.ask) or q.ask <= 0:
        raise SnapshotFormatError(f"{where}: nonpositive ask {q.ask!r}")


def parse_snapshot(data, format="csv") -> list[Quote]:
    """Parse a CSV or JSON snapshot into quotes, preserving record order.

    data may be bytes, text, or a readable file object.  CSV needs the
    header `market,base,quote,ask` (a trailing `timestamp` column is
    accepted and ignored); JSON is an array of objects with those four keys.
    """
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8-sig")  # tolerate a BOM from spreadsheet exports
    elif data[:1] == "﻿":
        data = data[1:]
    if format == "csv":
        return _parse_csv(data)
    if format == "json":
        return _parse_json(data)
    raise ValueError(f"unknown snapshot format {format!r}")


def _parse_csv(text: str) -> list[Quote]:
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r and any(cell.strip() for cell in r)]
    if not rows:
        return []
    header = tuple(cell.strip().lower() for cell in rows[0])
    if header[:4] != CSV_HEADER or header[4:] not in ((), ("timestamp",)):
        raise SnapshotFormatError(
            f"line 1: expected header {','.join(CSV_HEADER)}, got {','.join(header)}"
        )
    quotes = []
    seen = set()
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise SnapshotFormatError(
                f"line {lineno}: expected {len(header)} fields, got {len(row)}"
            )
        market, base, quote = (cell.strip() for cell in row[:3])
        try:
            ask = float(row[3])
        except ValueError:
            raise SnapshotFormatError(f"line {lineno}: bad ask {row[3]!r}") from None
        q = Quote(market, base, quote, ask)
        _check_quote(q, f"line {lineno}")
        key = (market, base, quote)
        if key in seen:
            raise SnapshotFormatError(f"line {lineno}: duplicate quote {key}")
        seen.add(key)
        quotes.append(q)
    return quotes


def _parse_json(text: str) -> list[Quote]:
    if not text.strip():
        return []
    try:
        records = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SnapshotFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(records, list):
        raise SnapshotFormatError("JSON snapshot must be an array of objects")
    quotes = []
    seen = set()
    for pos, rec in enumerate(records):
        where = f"record {pos}"
        if not isinstance(rec, dict):
            raise SnapshotFormatError(f"{where}: not an object")
        try:
            q = Quote(str(rec["market"]), str(rec["base"]), str(rec["quote"]),
                      float(rec["ask"]))
        except KeyError as exc:
            raise SnapshotFormatError(f"{where}: missing key {exc}") from None
        except (TypeError, ValueError):
            raise SnapshotFormatError(f"{where}: bad ask {rec.get('ask')!r}") from None
        _check_quote(q, where)
        key = (q.market, q.base, q.quote)
        if key in seen:
            raise SnapshotFormatError(f"{where}: duplicate quote {key}")
        seen.add(key)
        quotes.append(q)
    return quotes


def write_snapshot_csv(quotes, out) -> None:
    """Write quotes in the CSV snapshot format to a file object."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for q in quotes:
        writer.writerow([q.market, q.base, q.quote, repr(q.ask)])


def build_graph(quotes, spread_range=DEFAULT_SPREAD_RANGE,
                transfer_rate=DEFAULT_TRANSFER_RATE, seed=0) -> ExchangeGraph:
    """Build the exchange graph from quotes.

    Every quote becomes a forward edge weighted by its ask.  If the opposite
    direction is not quoted at the same market, a reverse edge is added with
    rate spread/ask, where spread is drawn per quote from spread_range using
    seed; the stored assignment is the achieved product rate(u,v)*rate(v,u),
    which is below 1 so round trips always lose.  Currencies present at
    several markets get transfer edges (both directions, rate transfer_rate)
    between every pair of their nodes.
    """
    if not quotes:
        raise SnapshotFormatError("cannot build a graph from an empty snapshot")
    lo, hi = spread_range
    if not (0.0 < lo <= hi < 1.0):
        raise ValueError(f"spread range must lie inside (0, 1), got {spread_range}")
    if not 0.0 < transfer_rate < 1.0:
        raise ValueError(f"transfer rate must lie in (0, 1), got {transfer_rate}")

    seen = set()
    for pos, q in enumerate(quotes):
        _check_quote(q, f"quote {pos}")
        key = (q.market, q.base, q.quote)
        if key in seen:
            raise SnapshotFormatError(f"quote {pos}: duplicate {key}")
        seen.add(key)

    pairs = sorted({(q.market, q.base) for q in quotes} | {(q.market, q.quote) for q in quotes})
    index = {pair: i for i, pair in enumerate(pairs)}
    nodes = [NodeId(i, market, currency) for i, (market, currency) in enumerate(pairs)]

    explicit = {(index[(q.market, q.base)], index[(q.market, q.quote)]) for q in quotes}
    rng = np.random.default_rng(seed)
    draws = rng.uniform(lo, hi, size=len(quotes))

    edges = []
    spreads = {}
    for q in quotes:
        edges.append((index[(q.market, q.base)], index[(q.market, q.quote)], q.ask))
    for q, spread in zip(quotes, draws.tolist()):
        u = index[(q.market, q.base)]
        v = index[(q.market, q.quote)]
        if (v, u) in explicit:
            continue  # both directions quoted: keep them, add no synthetic reverse
        reverse = spread / q.ask
        edges.append((v, u, reverse))
        spreads[(u, v)] = q.ask * reverse  # achieved round-trip product, < 1

    by_currency = {}
    for node in nodes:
        by_currency.setdefault(node.currency, []).append(node.index)
    for currency in sorted(by_currency):
        members = by_currency[currency]
        if len(members) < 2:
            continue
        for a in members:
            for b in members:
                if a != b:
                    edges.append((a, b, transfer_rate))

    return ExchangeGraph(nodes=nodes, edges=edges, spread_assignments=spreads,
                         transfer_rate=transfer_rate)


def snapshot_stats(graph: ExchangeGraph) -> SnapshotStats:
    """Shape statistics of a built exchange graph."""
    rates = [r for _, _, r in graph.edges]
    return SnapshotStats(
        n_markets=len({node.market for node in graph.nodes}),
        n_currencies=len({node.currency for node in graph.nodes}),
        n_nodes=graph.n,
        n_edges=len(graph.edges),
        min_rate=min(rates),
        max_rate=max(rates),
    )


def _currency_names(count):
    names = list(_CURRENCY_CODES[:count])
    names.extend(f"C{i:03d}" for i in range(len(names), count))
    return names


def _market_listings(rng, n_markets, pool):
    """Deal pool currencies to markets: a few large venues, a long tail.

    Every pool currency is listed at least once when the total listing
    budget allows; multiplicity beyond that creates the cross-market
    transfer structure.
    """
    if not pool:
        return [[] for _ in range(n_markets)]
    if n_markets == 1:
        return [list(pool)]
    weights = np.array([0.85 ** i for i in range(n_markets)])
    budget = round(min(n_markets, 2.2) * len(pool))
    floor = min(3, len(pool))
    sizes = [
        int(np.clip(round(budget * w / weights.sum()), floor, len(pool)))
        for w in weights
    ]
    deck = list(rng.permutation(pool))
    listings = []
    for size in sizes:
        hosted = []
        taken = set()
        while len(hosted) < size:
            if not deck:
                deck = list(rng.permutation(pool))
            name = deck.pop(0)
            if name in taken:
                continue
            taken.add(name)
            hosted.append(name)
        listings.append(hosted)
    return listings


def gen_synthetic(n_markets, n_currencies, density, planted=None, seed=0) -> list[Quote]:
    """Generate a deterministic synthetic snapshot.

    Each currency gets a fair log10 value in [-6, 6] (so rates span many
    orders of magnitude) plus a tiny per-market mispricing offset; every
    quote is shaded slightly below fair value.  Offsets and shading are
    bounded by the spread and transfer discounts, which makes every cycle in
    the built graph strictly unprofitable -- except a planted one.

    planted=(length, product) reserves `length` currencies, lists them at the
    first market only, and quotes exactly one directed cycle over them whose
    rate product equals `product` (relative error well under 1e-9).  The
    reserved currencies appear in no other quote and at no other market, so
    the planted cycle is the unique cycle of any length with product > 1.
    """
    if n_markets < 1:
        raise ValueError("need at least one market")
    if n_currencies < 2:
        raise ValueError("need at least two currencies")
    if not 0.0 < density <= 1.0:
        raise ValueError(f"density must lie in (0, 1], got {density}")
    if planted is not None:
        length, product = planted
        if length < 3:
            raise ValueError("planted cycle length must be at least 3")
        if length > n_currencies:
            raise ValueError(
                f"cannot plant a {length}-cycle with only {n_currencies} currencies"
            )
        if product <= 1.0:
            raise ValueError("planted product must exceed 1")

    rng = np.random.default_rng(seed)
    markets = [f"M{i + 1}" for i in range(n_markets)]
    currencies = _currency_names(n_currencies)
    if planted is not None:
        planted_currencies = currencies[-length:]
        pool = currencies[:-length]
    else:
        planted_currencies = []
        pool = currencies

    cindex = {c: i for i, c in enumerate(currencies)}
    fair = rng.uniform(-6.0, 6.0, size=n_currencies)
    # Mispricing offsets stay below the transfer discount (|log10 0.9999|)
    # and quote shading below the spread floor (|ln 0.999999|), so no
    # combination of generated edges multiplies above 1.
    offsets = rng.uniform(-1.5e-5, 1.5e-5, size=(n_markets, n_currencies))
    listings = _market_listings(rng, n_markets, pool)

    def ask(mi, base, quote):
        drift = (fair[cindex[base]] + offsets[mi, cindex[base]]) - (
            fair[cindex[quote]] + offsets[mi, cindex[quote]]
        )
        shade = rng.uniform(1e-7, 5e-7)
        return float(10.0 ** drift * math.exp(-shade))

    quotes = []
    for mi, market in enumerate(markets):
        hosted = listings[mi]
        chained = set()
        for j in range(len(hosted) - 1):
            quotes.append(Quote(market, hosted[j], hosted[j + 1],
                                ask(mi, hosted[j], hosted[j + 1])))
            chained.add((j, j + 1))
        for j in range(len(hosted)):
            for k in range(j + 1, len(hosted)):
                if (j, k) in chained:
                    continue
                if rng.random() >= density:
                    continue
                base, quote = hosted[j], hosted[k]
                if rng.random() < 0.5:
                    base, quote = quote, base
                quotes.append(Quote(market, base, quote, ask(mi, base, quote)))

    if planted is not None:
        boost = product ** (1.0 / length)
        for i, base in enumerate(planted_currencies):
            quote = planted_currencies[(i + 1) % length]
            drift = fair[cindex[base]] - fair[cindex[quote]]
            quotes.append(Quote(markets[0], base, quote, float(10.0 ** drift * boost)))

    return quotes
