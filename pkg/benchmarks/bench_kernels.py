"""Benchmark the compiled kernel backend against the pure-Python fallback.

Builds a large synthetic citation DAG, runs each kernel through every
available backend on identical inputs, verifies the outputs agree, and
prints per-kernel timings with the compiled/python speedup.

Usage:
    python3 benchmarks/bench_kernels.py [--n 50000] [--degree 6] [--repeats 3]
"""

from __future__ import annotations

import argparse
import string
import time

import numpy as np

from citerec.graph import CitationGraph
from citerec.kernels import available_backends


def build_dag(rng: np.random.Generator, n: int, degree: float) -> CitationGraph:
    """Random DAG at scale: each node cites ~degree earlier nodes."""
    position = rng.permutation(n)  # position[i] = topological rank of node i
    by_rank = np.argsort(position)
    srcs: list[np.ndarray] = []
    dsts: list[np.ndarray] = []
    for rank in range(1, n):
        node = by_rank[rank]
        k = min(int(rng.poisson(degree)), rank)
        if k == 0:
            continue
        targets = by_rank[rng.choice(rank, size=k, replace=False)]
        srcs.append(np.full(k, node, dtype=np.int64))
        dsts.append(targets.astype(np.int64))
    if srcs:
        edges = np.column_stack([np.concatenate(srcs), np.concatenate(dsts)])
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    ids = [f"a{i:07d}" for i in range(n)]
    return CitationGraph(ids, edges)


def codepoints(text: str) -> np.ndarray:
    return np.frombuffer(text.encode("utf-32-le"), dtype=np.int32)


def time_batch(fn, repeats: int) -> float:
    """Best-of-N total seconds for one batch of calls."""
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=50_000, help="number of articles")
    parser.add_argument("--degree", type=float, default=6.0, help="mean references per article")
    parser.add_argument("--repeats", type=int, default=3, help="best-of repeats per batch")
    parser.add_argument("--seed", type=int, default=7, help="RNG seed")
    parser.add_argument("--skip-check", action="store_true", help="skip cross-backend equality checks")
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    g = build_dag(rng, args.n, args.degree)
    backends = available_backends()
    print(f"graph: n={g.n}  m={g.m}  backends: {', '.join(sorted(backends))}")

    khop_sources = rng.integers(0, g.n, size=200)
    dist_targets = rng.integers(0, g.n, size=5)
    pair_nodes = rng.integers(0, g.n, size=(2000, 2))
    alphabet = np.array(list(string.ascii_lowercase + " "))
    titles = ["".join(rng.choice(alphabet, size=80)) for _ in range(40)]
    title_pairs = [
        (codepoints(titles[i % len(titles)]), codepoints(titles[(i * 7 + 3) % len(titles)]))
        for i in range(100)
    ]

    batches = {
        "khop_closure(k=3) x200": lambda impl: [
            impl.khop_closure(g.out_indptr, g.out_indices, int(s), 3) for s in khop_sources
        ],
        "distance_histogram x5": lambda impl: [
            impl.distance_histogram(g.in_indptr, g.in_indices, int(t)) for t in dist_targets
        ],
        "intersection_size x2000": lambda impl: [
            impl.intersection_size(g.out_row(int(a)), g.out_row(int(b))) for a, b in pair_nodes
        ],
        "levenshtein(80ch) x100": lambda impl: [
            impl.levenshtein(a, b) for a, b in title_pairs
        ],
    }

    if not args.skip_check and len(backends) > 1:
        names = sorted(backends)
        for label, batch in batches.items():
            results = [batch(backends[name]) for name in names]
            for got in results[1:]:
                same = all(
                    np.array_equal(x, y) if isinstance(x, np.ndarray) else x == y
                    for x, y in zip(results[0], got)
                )
                if not same:
                    raise SystemExit(f"backend disagreement in {label}")
        print("cross-backend equality: ok")

    col = max(len(k) for k in batches) + 2
    header = f"{'kernel batch':<{col}}" + "".join(f"{name:>14}" for name in sorted(backends))
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for label, batch in batches.items():
        timings = {
            name: time_batch(lambda impl=impl: batch(impl), args.repeats)
            for name, impl in backends.items()
        }
        row = f"{label:<{col}}" + "".join(
            f"{timings[name] * 1e3:>11.2f} ms" for name in sorted(backends)
        )
        if "compiled" in timings and "python" in timings and timings["compiled"] > 0:
            row += f"{timings['python'] / timings['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
