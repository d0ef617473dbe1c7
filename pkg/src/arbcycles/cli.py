"""Command-line surface: ingest, gen-synthetic, transform-stats, find-cycle,
compare.

All commands print a JSON report on stdout (or --output) and a short human
summary on stderr.  Exit codes: 0 success, 2 no qualifying cycle, 1 error.
"""

from __future__ import annotations

import json
import sys
import time

import click

from .apsp import DistanceMatrix, apsp_by_squaring, floyd_warshall_min_cycle
from .errors import ArbcyclesError
from .evaluate import DEFAULT_NODE_CAP, brute_force_best_cycle, evaluate_cycle
from .snapshot import (DEFAULT_SPREAD_RANGE, DEFAULT_TRANSFER_RATE, build_graph,
                       gen_synthetic, parse_snapshot, snapshot_stats,
                       write_snapshot_csv)
from .transform import transform, uniqueness_stats
from .triangle import build_tripartite, min_triangle
from .witness import SamplerConfig, reconstruct_cycle, witness_matrix

DEFAULT_MULTIPLIER = 10_000_000
DEFAULT_SWEEP = (100, 1_000, 100_000, 1_000_000, 10_000_000)
BRUTE_MAX_LEN = 9

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_CYCLE = 2


class _ErrorExitGroup(click.Group):
    """Exit 1 on usage errors; click's default of 2 is reserved for the
    no-cycle outcome in this CLI's scripting contract."""

    def main(self, *args, standalone_mode=True, **kwargs):
        try:
            return super().main(*args, standalone_mode=False, **kwargs)
        except click.exceptions.Abort:
            click.echo("aborted", err=True)
            sys.exit(EXIT_ERROR)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_ERROR)


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_ERROR)


def _emit(payload, output):
    text = json.dumps(payload, indent=2)
    if output:
        with open(output, "w") as f:
            f.write(text + "\n")
    else:
        click.echo(text)


def parse_synthetic_spec(spec: str):
    """Parse `markets:currencies:density[:planted:LEN:PRODUCT]` or the
    shorthand `planted:LEN:PRODUCT` (one market, a few filler currencies)."""
    parts = spec.split(":")
    try:
        if parts[0] == "planted" and len(parts) == 3:
            length, product = int(parts[1]), float(parts[2])
            return dict(n_markets=1, n_currencies=max(length + 3, 6),
                        density=0.5, planted=(length, product))
        if len(parts) == 3:
            return dict(n_markets=int(parts[0]), n_currencies=int(parts[1]),
                        density=float(parts[2]), planted=None)
        if len(parts) == 6 and parts[3] == "planted":
            return dict(n_markets=int(parts[0]), n_currencies=int(parts[1]),
                        density=float(parts[2]),
                        planted=(int(parts[4]), float(parts[5])))
    except ValueError as exc:
        raise ValueError(f"bad synthetic spec {spec!r}: {exc}") from None
    raise ValueError(
        f"bad synthetic spec {spec!r}; use M:C:D, M:C:D:planted:L:P or planted:L:P"
    )


def _input_options(fn):
    fn = click.option("--input", "input_path", type=click.Path(exists=True),
                      help="Snapshot file to ingest.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                      default="csv", show_default=True,
                      help="Snapshot file format.")(fn)
    fn = click.option("--synthetic", "synthetic_spec", default=None,
                      help="Generate the snapshot instead: M:C:D, "
                           "M:C:D:planted:L:P or planted:L:P.")(fn)
    fn = click.option("--epsilon-lo", default=DEFAULT_SPREAD_RANGE[0],
                      show_default=True, help="Lower spread factor bound.")(fn)
    fn = click.option("--epsilon-hi", default=DEFAULT_SPREAD_RANGE[1],
                      show_default=True, help="Upper spread factor bound.")(fn)
    fn = click.option("--transfer-epsilon", default=DEFAULT_TRANSFER_RATE,
                      show_default=True,
                      help="Rate on cross-market transfer edges.")(fn)
    fn = click.option("--seed", default=0, show_default=True,
                      help="Seed for synthetic data, spreads and sampling.")(fn)
    return fn


def _load_graph(input_path, fmt, synthetic_spec, epsilon_lo, epsilon_hi,
                transfer_epsilon, seed):
    if (input_path is None) == (synthetic_spec is None):
        raise ValueError("exactly one of --input and --synthetic is required")
    if input_path is not None:
        with open(input_path, "rb") as f:
            quotes = parse_snapshot(f, fmt)
    else:
        quotes = gen_synthetic(seed=seed, **parse_synthetic_spec(synthetic_spec))
    return build_graph(quotes, (epsilon_lo, epsilon_hi), transfer_epsilon, seed=seed)


def _triangle_search(tgraph, min_length, include_two_cycles, seed):
    adj = DistanceMatrix.from_edges(tgraph.n, tgraph.int_edges, diagonal=0)
    d = apsp_by_squaring(adj)
    include = include_two_cycles or min_length == 2
    tri = min_triangle(build_tripartite(tgraph, d, include_two_cycles=include))
    if tri is None:
        return None
    w = witness_matrix(d, SamplerConfig(seed=seed))
    nodes = reconstruct_cycle(tri, d, w, tgraph)
    return nodes, tri.total


def _floyd_search(tgraph, min_length):
    adj = DistanceMatrix.from_edges(tgraph.n, tgraph.int_edges, diagonal=0)
    found = floyd_warshall_min_cycle(adj, min_length=min_length)
    if found is None:
        return None
    return found.nodes, found.sum_weight


def _brute_search(graph, tgraph, min_length):
    found = brute_force_best_cycle(graph, max_len=BRUTE_MAX_LEN,
                                   objective="max_product", min_length=min_length)
    if found is None:
        return None
    wmap = tgraph.weight_map()
    nodes = found.nodes
    total = sum(wmap[(a, nodes[(i + 1) % len(nodes)])] for i, a in enumerate(nodes))
    return nodes, total


@click.group(cls=_ErrorExitGroup)
def main():
    """Detect profitable trade cycles in market snapshot graphs."""


@main.command()
@_input_options
@click.option("--output", default=None, help="Write the JSON report here.")
def ingest(input_path, fmt, synthetic_spec, epsilon_lo, epsilon_hi,
           transfer_epsilon, seed, output):
    """Parse a snapshot, build the graph, and report its shape statistics."""
    try:
        graph = _load_graph(input_path, fmt, synthetic_spec, epsilon_lo,
                            epsilon_hi, transfer_epsilon, seed)
    except (ArbcyclesError, ValueError, OSError) as exc:
        _fail(str(exc))
    stats = snapshot_stats(graph)
    _emit({
        "n_markets": stats.n_markets,
        "n_currencies": stats.n_currencies,
        "n_nodes": stats.n_nodes,
        "n_edges": stats.n_edges,
        "min_rate": stats.min_rate,
        "max_rate": stats.max_rate,
    }, output)
    click.echo(f"{stats.n_nodes} nodes, {stats.n_edges} edges from "
               f"{stats.n_markets} markets / {stats.n_currencies} currencies",
               err=True)


@main.command("gen-synthetic")
@click.option("--markets", required=True, type=int, help="Number of markets.")
@click.option("--currencies", required=True, type=int, help="Number of currencies.")
@click.option("--density", default=0.2, show_default=True,
              help="Probability of quoting a currency pair within a market.")
@click.option("--planted", default=None,
              help="Plant a profitable cycle, as LENGTH:PRODUCT (e.g. 3:1.05).")
@click.option("--seed", default=0, show_default=True)
@click.option("--output", default=None, help="Write the CSV snapshot here.")
def gen_synthetic_cmd(markets, currencies, density, planted, seed, output):
    """Generate a synthetic snapshot and write it as CSV."""
    plant = None
    if planted is not None:
        try:
            length, product = planted.split(":")
            plant = (int(length), float(product))
        except ValueError:
            _fail(f"bad --planted value {planted!r}; expected LENGTH:PRODUCT")
    try:
        quotes = gen_synthetic(markets, currencies, density, plant, seed)
    except ValueError as exc:
        _fail(str(exc))
    if output:
        with open(output, "w") as f:
            write_snapshot_csv(quotes, f)
    else:
        write_snapshot_csv(quotes, sys.stdout)
    click.echo(f"wrote {len(quotes)} quotes", err=True)


@main.command("transform-stats")
@_input_options
@click.option("--c-values", default=",".join(str(c) for c in DEFAULT_SWEEP),
              show_default=True, help="Comma-separated weight multipliers.")
@click.option("--output", default=None, help="Write the JSON report here.")
def transform_stats(input_path, fmt, synthetic_spec, epsilon_lo, epsilon_hi,
                    transfer_epsilon, seed, c_values, output):
    """Uniqueness of transformed integer weights across multiplier values."""
    try:
        graph = _load_graph(input_path, fmt, synthetic_spec, epsilon_lo,
                            epsilon_hi, transfer_epsilon, seed)
        multipliers = [int(c) for c in c_values.split(",") if c.strip()]
        rows = []
        for c in multipliers:
            st = uniqueness_stats(graph, c)
            rows.append({
                "multiplier": c,
                "total_edges": st.total_edges,
                "distinct_original": st.distinct_original,
                "distinct_transformed": st.distinct_transformed,
                "fraction": st.fraction,
            })
    except (ArbcyclesError, ValueError, OSError) as exc:
        _fail(str(exc))
    _emit(rows, output)
    for row in rows:
        click.echo(f"c={row['multiplier']}: {row['distinct_transformed']}"
                   f"/{row['distinct_original']} distinct "
                   f"({100 * row['fraction']:.2f}%)", err=True)


def _method_options(fn):
    fn = click.option("-c", "--weight-multiplier", default=DEFAULT_MULTIPLIER,
                      show_default=True, type=int,
                      help="Integer multiplier applied to log weights.")(fn)
    fn = click.option("--min-length", default=3, show_default=True,
                      type=click.Choice(["2", "3"]),
                      help="Shortest admissible cycle length.")(fn)
    fn = click.option("--include-two-cycles", is_flag=True,
                      help="Admit back-and-forth cycles in the triangle scan "
                           "regardless of --min-length.")(fn)
    return fn


@main.command("find-cycle")
@_input_options
@_method_options
@click.option("--method", type=click.Choice(["triangle", "floyd", "brute"]),
              default="triangle", show_default=True)
@click.option("--output", default=None, help="Write the JSON report here.")
def find_cycle(input_path, fmt, synthetic_spec, epsilon_lo, epsilon_hi,
               transfer_epsilon, seed, weight_multiplier, min_length,
               include_two_cycles, method, output):
    """Find the minimum weight cycle and report its profitability."""
    min_length = int(min_length)
    try:
        graph = _load_graph(input_path, fmt, synthetic_spec, epsilon_lo,
                            epsilon_hi, transfer_epsilon, seed)
        tgraph = transform(graph, weight_multiplier)
        if method == "triangle":
            found = _triangle_search(tgraph, min_length, include_two_cycles, seed)
        elif method == "floyd":
            found = _floyd_search(tgraph, min_length)
        else:
            found = _brute_search(graph, tgraph, min_length)
    except (ArbcyclesError, ValueError, OSError) as exc:
        _fail(str(exc))
    if found is None:
        _emit({"no_cycle": True, "min_length": min_length}, output)
        click.echo(f"no cycle of length >= {min_length} exists", err=True)
        sys.exit(EXIT_NO_CYCLE)
    nodes, total = found
    report = evaluate_cycle(nodes, graph, sum_weight=total)
    _emit(report.to_dict(labels=graph.label), output)
    if len(set(nodes)) != len(nodes):
        # possible only on graphs where stacked round trips undercut every
        # simple cycle of the requested length (the triangle scan minimizes
        # over closed walks)
        click.echo("warning: result is a non-simple closed walk", err=True)
    click.echo(f"cycle of {len(nodes)} trades, profit "
               f"{report.cycle.profit_pct:+.4f}%", err=True)


@main.command()
@_input_options
@_method_options
@click.option("--output", default=None, help="Write the JSON report here.")
def compare(input_path, fmt, synthetic_spec, epsilon_lo, epsilon_hi,
            transfer_epsilon, seed, weight_multiplier, min_length,
            include_two_cycles, output):
    """Run every applicable method, with timings and an agreement flag.

    The brute-force column is omitted when the graph exceeds its node cap.
    """
    min_length = int(min_length)
    try:
        graph = _load_graph(input_path, fmt, synthetic_spec, epsilon_lo,
                            epsilon_hi, transfer_epsilon, seed)
        tgraph = transform(graph, weight_multiplier)
        searches = {
            "triangle": lambda: _triangle_search(tgraph, min_length,
                                                 include_two_cycles, seed),
            "floyd": lambda: _floyd_search(tgraph, min_length),
        }

        def brute_min_sum():
            found = brute_force_best_cycle(tgraph, max_len=BRUTE_MAX_LEN,
                                           objective="min_sum",
                                           min_length=min_length)
            return None if found is None else (found.nodes, found.sum_weight)

        if graph.n <= DEFAULT_NODE_CAP:
            searches["brute"] = brute_min_sum
        methods = {}
        for name, search in searches.items():
            start = time.perf_counter()
            found = search()
            elapsed = time.perf_counter() - start
            if found is None:
                methods[name] = {"no_cycle": True, "seconds": elapsed}
            else:
                nodes, total = found
                report = evaluate_cycle(nodes, graph, sum_weight=total)
                methods[name] = {
                    "sum_weight": total,
                    "path": [graph.label(i) for i in nodes],
                    "profit_pct": report.cycle.profit_pct,
                    "seconds": elapsed,
                }
    except (ArbcyclesError, ValueError, OSError) as exc:
        _fail(str(exc))
    weights = {m: r.get("sum_weight") for m, r in methods.items()}
    agree = len(set(weights.values())) == 1
    _emit({"n": graph.n, "methods": methods, "agree": agree}, output)
    for name, result in methods.items():
        summary = ("no cycle" if result.get("no_cycle")
                   else f"sum={result['sum_weight']}")
        click.echo(f"{name}: {summary} ({result['seconds']:.3f}s)", err=True)
    if not agree:
        click.echo("warning: methods disagree on the minimum weight", err=True)


if __name__ == "__main__":
    main()
