"""Independent reference implementations used to cross-check the engine.

Everything here is deliberately written with a different algorithm and
different data structures than the package under test: boolean matrix
powers instead of BFS, Floyd-Warshall instead of level traversal, brute
set algebra instead of sorted-array kernels, and plain-float arithmetic
instead of vectorized scoring. Agreement between the two families is the
evidence; neither side shares code with the other.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def khop_reachable_matrix_power(adj: np.ndarray, src: int, k: int) -> set[int]:
    """Nodes reachable from src in 1..k steps, via boolean matrix powers."""
    n = adj.shape[0]
    reach = np.zeros((n, n), dtype=bool)
    power = np.eye(n, dtype=bool)
    a = adj.astype(bool)
    for _ in range(k):
        power = power @ a
        reach |= power
    return {j for j in range(n) if reach[src, j]}


def floyd_warshall(adj: np.ndarray) -> np.ndarray:
    """All-pairs shortest path lengths; math.inf where unreachable."""
    n = adj.shape[0]
    dist = np.full((n, n), math.inf)
    np.fill_diagonal(dist, 0.0)
    dist[adj.astype(bool)] = 1.0
    np.fill_diagonal(dist, 0.0)
    for mid in range(n):
        cand = dist[:, mid][:, None] + dist[mid, :][None, :]
        dist = np.minimum(dist, cand)
    return dist


def distance_histogram_oracle(adj: np.ndarray, target: int) -> dict[int, int]:
    """How many nodes sit at each finite distance >= 1 from target, going *to* it."""
    dist = floyd_warshall(adj)
    out: dict[int, int] = {}
    n = adj.shape[0]
    for u in range(n):
        d = dist[u, target]
        if u != target and math.isfinite(d):
            out[int(d)] = out.get(int(d), 0) + 1
    return out


def set_intersection_count(a, b) -> int:
    return len(set(a) & set(b))


def naive_levenshtein(a: str, b: str) -> int:
    """Textbook full-matrix edit distance."""
    rows, cols = len(a) + 1, len(b) + 1
    d = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        d[i][0] = i
    for j in range(cols):
        d[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
    return d[-1][-1]


def naive_cosine(u, v) -> float:
    dot = sum(float(x) * float(y) for x, y in zip(u, v))
    nu = math.sqrt(sum(float(x) ** 2 for x in u))
    nv = math.sqrt(sum(float(y) ** 2 for y in v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def exact_title_cosine(a_tokens: list[str], b_tokens: list[str]) -> Fraction | None:
    """Squared cosine as an exact rational, or None when either side is empty.

    Exact arithmetic sidesteps float comparison entirely; the caller takes
    the square root at the end.
    """
    if not a_tokens or not b_tokens:
        return None
    ca: dict[str, int] = {}
    cb: dict[str, int] = {}
    for t in a_tokens:
        ca[t] = ca.get(t, 0) + 1
    for t in b_tokens:
        cb[t] = cb.get(t, 0) + 1
    dot = sum(ca[t] * cb.get(t, 0) for t in ca)
    na2 = sum(c * c for c in ca.values())
    nb2 = sum(c * c for c in cb.values())
    return Fraction(dot * dot, na2 * nb2)


def brute_force_ranking(
    candidate_rows: list[dict],
    weights: tuple[float, float, float],
) -> list[str]:
    """Score-and-sort with plain floats and an explicit stable sort.

    Each row carries id, abstract_sim, title_sim, node_sim, year. Ranking
    key: weighted score desc, year desc, id asc.
    """
    scored = []
    for row in candidate_rows:
        s = (
            weights[0] * row["abstract_sim"]
            + weights[1] * row["title_sim"]
            + weights[2] * row["node_sim"]
        )
        scored.append((s, row["year"], row["id"]))
    scored.sort(key=lambda t: (-t[0], -t[1], t[2]))
    return [aid for _, _, aid in scored]


def brute_force_max_min(values: list[float]) -> list[float]:
    if not values:
        return []
    lo, hi = min(values), max(values)
    if hi == lo:
        return [0.0 for _ in values]
    return [(v - lo) / (hi - lo) for v in values]


def mean_of(values: list[float]) -> float:
    return sum(values) / len(values)


def weak_components_brute(nodes: list, edges: list[tuple]) -> list[set]:
    """Weakly connected components by repeated frontier expansion over sets."""
    undirected: dict = {n: set() for n in nodes}
    for u, v in edges:
        undirected[u].add(v)
        undirected[v].add(u)
    seen = set()
    comps: list[set] = []
    for start in nodes:
        if start in seen:
            continue
        comp = {start}
        frontier = {start}
        while frontier:
            frontier = {w for f in frontier for w in undirected[f]} - comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps
