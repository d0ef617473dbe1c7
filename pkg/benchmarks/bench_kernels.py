#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the min-plus product (plain and with witnesses) and the Floyd-Warshall
relaxation at a few sizes, plus one full APSP-by-squaring run at the
desk-scale 243-node shape.

Usage: python3 benchmarks/bench_kernels.py [--sizes 64,128,243] [--repeats 3]
"""

import argparse
import time

import numpy as np

from arbcycles import INF
from arbcycles import _minplus_py as numpy_impl

try:
    from arbcycles import _minplus as cython_impl
except ImportError:
    cython_impl = None

BACKENDS = {"numpy": numpy_impl}
if cython_impl is not None:
    BACKENDS["cython"] = cython_impl


def random_matrix(rng, n, inf_density=0.5):
    m = rng.integers(1, 10**6, (n, n)).astype(np.int64)
    m[rng.random((n, n)) < inf_density] = INF
    return m


def best_of(repeats, fn):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_size(n, repeats, rng):
    a = random_matrix(rng, n)
    b = random_matrix(rng, n)
    rows = []
    for op, make in [
        ("min_plus", lambda impl: (lambda: impl.min_plus(a, b, INF))),
        ("min_plus_witness", lambda impl: (lambda: impl.min_plus_witness(a, b, INF))),
        ("floyd_warshall", None),
    ]:
        timings = {}
        for name, impl in BACKENDS.items():
            if op == "floyd_warshall":
                def run(impl=impl):
                    dist = a.copy()
                    np.fill_diagonal(dist, INF)
                    nxt = np.full((n, n), -1, dtype=np.int64)
                    via = np.full(n, -1, dtype=np.int64)
                    impl.floyd_warshall(dist, nxt, via, INF)
            else:
                run = make(impl)
            timings[name] = best_of(repeats, run)
        rows.append((n, op, timings))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="64,128,243",
                        help="Comma-separated matrix sizes.")
    parser.add_argument("--repeats", type=int, default=3,
                        help="Repetitions per measurement (best is kept).")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if cython_impl is None:
        print("compiled extension not available; timing the fallback only\n")
    rng = np.random.default_rng(0)

    header = f"{'n':>5}  {'kernel':<18}" + "".join(
        f"{name:>12}" for name in BACKENDS)
    if len(BACKENDS) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        for size, op, timings in bench_size(n, args.repeats, rng):
            line = f"{size:>5}  {op:<18}" + "".join(
                f"{timings[name] * 1e3:>10.2f}ms" for name in BACKENDS)
            if len(BACKENDS) == 2:
                line += f"{timings['numpy'] / timings['cython']:>9.1f}x"
            print(line)
    print()

    # end-to-end flavor: exact APSP by repeated squaring at the 243 shape
    n = sizes[-1]
    adj = random_matrix(rng, n, inf_density=0.9)
    np.fill_diagonal(adj, 0)
    for name, impl in BACKENDS.items():
        def apsp():
            d = adj
            for _ in range(max(1, int(n - 1).bit_length())):
                nxt = impl.min_plus(d, d, INF)
                if np.array_equal(nxt, d):
                    break
                d = nxt
        print(f"apsp_by_squaring n={n} [{name}]: {best_of(args.repeats, apsp) * 1e3:.1f}ms")


if __name__ == "__main__":
    main()
