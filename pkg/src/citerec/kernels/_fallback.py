"""Pure-Python graph and string kernels.

Same contracts as the compiled ``_core`` extension; used when the extension
has not been built. Correct on any input size, just slower on large graphs.
"""

from __future__ import annotations

import numpy as np


def khop_closure(indptr, indices, src: int, k: int):
    """Nodes reachable from ``src`` by directed paths of length 1..k.

    Breadth-first expansion over CSR adjacency; ``src`` itself is never
    included, even when the graph has cycles through it. Returns a sorted
    int32 array.
    """
    n = len(indptr) - 1
    seen = np.zeros(n, dtype=bool)
    seen[src] = True
    frontier = [src]
    reached: list[int] = []
    for _ in range(k):
        nxt: list[int] = []
        for u in frontier:
            for v in indices[indptr[u]:indptr[u + 1]]:
                v = int(v)
                if not seen[v]:
                    seen[v] = True
                    nxt.append(v)
        reached.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    out = np.array(sorted(reached), dtype=np.int32)
    return out


def distance_histogram(indptr, indices, src: int):
    """BFS level sizes from ``src``: result[d] = number of nodes at distance d.

    result[0] is always 0 (the source itself is not counted). Nodes not
    reachable from ``src`` are excluded.
    """
    n = len(indptr) - 1
    seen = np.zeros(n, dtype=bool)
    seen[src] = True
    frontier = [src]
    counts = [0]
    while frontier:
        nxt: list[int] = []
        for u in frontier:
            for v in indices[indptr[u]:indptr[u + 1]]:
                v = int(v)
                if not seen[v]:
                    seen[v] = True
                    nxt.append(v)
        if nxt:
            counts.append(len(nxt))
        frontier = nxt
    return np.array(counts, dtype=np.int64)


def intersection_size(a, b) -> int:
    """Size of the intersection of two sorted arrays of unique int32 ids."""
    return int(np.intersect1d(a, b, assume_unique=True).size)


def levenshtein(a, b) -> int:
    """Edit distance between two int32 codepoint arrays."""
    la, lb = len(a), len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    prev = list(range(lb + 1))
    cur = [0] * (lb + 1)
    for i in range(1, la + 1):
        cur[0] = i
        ai = a[i - 1]
        for j in range(1, lb + 1):
            cost = 0 if ai == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev, cur = cur, prev
    return prev[lb]
