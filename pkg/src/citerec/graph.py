"""Immutable citation graph: CSR adjacency, neighbor queries, analytics.

Nodes are articles; a directed edge A -> B means A cites B. Forward and
reverse adjacency are both stored as compressed sparse rows (dense node
indices, per-row sorted neighbor arrays) so bounded-hop traversals stay
cache-friendly on million-edge corpora. All queries are read-only; BFS
scratch space is allocated per call, so concurrent use is safe.

Acyclicity is not enforced at build time: real citation data can contain
same-year mutual citations, so ``validate_acyclicity`` is a separate
diagnostic that reports a witness cycle instead of crashing the engine.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .corpus import ArticleId, Corpus, normalize_title


class UnknownArticleError(KeyError):
    """Raised when a graph query names an id that is not a node."""


class CitationGraph:
    """CSR-backed directed graph over article ids."""

    def __init__(self, ids: list[ArticleId], edges: np.ndarray):
        """``edges`` is an (m, 2) int array of (citing, cited) node indices."""
        self.ids = ids
        self.id_to_index = {aid: i for i, aid in enumerate(ids)}
        n = len(ids)
        if edges.size:
            u = edges[:, 0].astype(np.int32, copy=False)
            v = edges[:, 1].astype(np.int32, copy=False)
        else:
            u = np.empty(0, dtype=np.int32)
            v = np.empty(0, dtype=np.int32)

        out_order = np.lexsort((v, u))
        self.out_indices = np.ascontiguousarray(v[out_order])
        self.out_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(u, minlength=n), out=self.out_indptr[1:])

        in_order = np.lexsort((u, v))
        self.in_indices = np.ascontiguousarray(u[in_order])
        self.in_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(v, minlength=n), out=self.in_indptr[1:])

        self._acyclic: bool | None = None
        self._cycle: list[ArticleId] | None = None

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def m(self) -> int:
        return int(self.out_indices.size)

    def index(self, article_id: ArticleId) -> int:
        try:
            return self.id_to_index[article_id]
        except KeyError:
            raise UnknownArticleError(f"unknown article id: {article_id!r}") from None

    def out_row(self, node: int) -> np.ndarray:
        """Sorted out-neighbor indices of a node (view, do not mutate)."""
        return self.out_indices[self.out_indptr[node]:self.out_indptr[node + 1]]

    def in_row(self, node: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[node]:self.in_indptr[node + 1]]


@dataclass
class GraphStats:
    n: int
    m: int
    density: float
    max_in_degree: int
    acyclic: bool

    def text_block(self) -> str:
        pct = self.density * 100.0
        return "\n".join(
            [
                f"nodes:         {self.n}",
                f"edges:         {self.m}",
                f"density:       {self.density:.4g} ({pct:.4g}%)",
                f"max in-degree: {self.max_in_degree}",
                f"acyclic:       {'yes' if self.acyclic else 'no'}",
            ]
        )


@dataclass
class SubgraphResult:
    """Induced subgraph for a keyword query plus its weak components."""

    nodes: list[ArticleId]
    edges: list[tuple[ArticleId, ArticleId]]
    components: list[list[ArticleId]]  # ordered largest first


def build_graph(corpus: Corpus) -> CitationGraph:
    """One node per article; one edge per in-corpus reference."""
    ids = list(corpus.articles.keys())
    index = {aid: i for i, aid in enumerate(ids)}
    pairs: list[tuple[int, int]] = []
    for art in corpus:
        u = index[art.id]
        for ref in art.references:
            pairs.append((u, index[ref]))
    edges = np.array(pairs, dtype=np.int64) if pairs else np.empty((0, 2), dtype=np.int64)
    return CitationGraph(ids, edges)


def out_neighbors(g: CitationGraph, article_id: ArticleId) -> set[ArticleId]:
    """The reference set of an article."""
    node = g.index(article_id)
    return {g.ids[int(v)] for v in g.out_row(node)}


def in_neighbors(g: CitationGraph, article_id: ArticleId) -> set[ArticleId]:
    """The citer set of an article."""
    node = g.index(article_id)
    return {g.ids[int(v)] for v in g.in_row(node)}


def k_hop_out_closure(g: CitationGraph, article_id: ArticleId, k: int) -> set[ArticleId]:
    """All nodes reachable by directed paths of length 1..k, excluding the start."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    node = g.index(article_id)
    reached = kernels.khop_closure(g.out_indptr, g.out_indices, node, k)
    return {g.ids[int(v)] for v in reached}


def density(g: CitationGraph) -> float:
    """Edge density 2m / (n(n-1)) of a directed acyclic citation graph."""
    if g.n < 2:
        raise ValueError(f"density undefined for n={g.n} (need n >= 2)")
    return 2.0 * g.m / (g.n * (g.n - 1))


def shortest_path_lengths_to(g: CitationGraph, target: ArticleId) -> dict[int, int]:
    """Histogram of shortest-path lengths from all other nodes to ``target``.

    BFS over the reverse graph; with unit edge weights this equals the
    single-target Dijkstra result. Nodes with no path are excluded.
    """
    node = g.index(target)
    hist = kernels.distance_histogram(g.in_indptr, g.in_indices, node)
    return {d: int(c) for d, c in enumerate(hist) if d >= 1 and c > 0}


def common_out_neighbors(g: CitationGraph, a: ArticleId, b: ArticleId) -> int:
    """Number of articles cited by both ``a`` and ``b``."""
    ia, ib = g.index(a), g.index(b)
    return kernels.intersection_size(g.out_row(ia), g.out_row(ib))


def max_in_degree(g: CitationGraph) -> int:
    if g.n == 0:
        return 0
    return int(np.max(np.diff(g.in_indptr)))


def validate_acyclicity(g: CitationGraph) -> tuple[bool, list[ArticleId] | None]:
    """Kahn's algorithm; on failure returns one witness cycle."""
    if g._acyclic is not None:
        return g._acyclic, None if g._cycle is None else list(g._cycle)

    n = g.n
    indeg = np.diff(g.in_indptr).astype(np.int64)
    queue = [i for i in range(n) if indeg[i] == 0]
    processed = 0
    while queue:
        u = queue.pop()
        processed += 1
        for v in g.out_row(u):
            v = int(v)
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)

    if processed == n:
        g._acyclic, g._cycle = True, None
        return True, None

    # walk the residual subgraph (every residual node keeps an out-edge
    # into the residual) until a node repeats, then cut out the cycle
    residual = indeg > 0
    start = int(np.nonzero(residual)[0][0])
    seen_at: dict[int, int] = {}
    path: list[int] = []
    u = start
    while u not in seen_at:
        seen_at[u] = len(path)
        path.append(u)
        for v in g.out_row(u):
            if residual[int(v)]:
                u = int(v)
                break
    cycle = [g.ids[i] for i in path[seen_at[u]:]]
    g._acyclic, g._cycle = False, cycle
    return False, list(cycle)


def is_acyclic(g: CitationGraph) -> bool:
    return validate_acyclicity(g)[0]


def graph_stats(g: CitationGraph) -> GraphStats:
    return GraphStats(
        n=g.n,
        m=g.m,
        density=density(g) if g.n >= 2 else 0.0,
        max_in_degree=max_in_degree(g),
        acyclic=is_acyclic(g),
    )


def _matches_phrase(title: str, keywords: list[str], phrase_norm: str) -> bool:
    if phrase_norm in normalize_title(title):
        return True
    return any(phrase_norm in normalize_title(kw) for kw in keywords)


def keyword_subgraph(corpus: Corpus, g: CitationGraph, phrase: str) -> SubgraphResult:
    """Induced subgraph of articles whose title or keywords contain ``phrase``.

    Components are weakly connected (direction ignored), ordered by size
    descending, ties broken by smallest member id.
    """
    phrase_norm = normalize_title(phrase)
    if not phrase_norm:
        raise ValueError("phrase must be non-empty")

    matched = [
        art.id for art in corpus if _matches_phrase(art.title, art.keywords, phrase_norm)
    ]
    matched_idx = sorted(g.index(aid) for aid in matched if aid in g.id_to_index)
    in_match = set(matched_idx)

    parent = {i: i for i in matched_idx}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    edges: list[tuple[ArticleId, ArticleId]] = []
    for u in matched_idx:
        for v in g.out_row(u):
            v = int(v)
            if v in in_match:
                edges.append((g.ids[u], g.ids[v]))
                union(u, v)

    groups: dict[int, list[ArticleId]] = {}
    for i in matched_idx:
        groups.setdefault(find(i), []).append(g.ids[i])
    components = sorted(
        (sorted(members) for members in groups.values()),
        key=lambda c: (-len(c), c[0]),
    )

    return SubgraphResult(nodes=sorted(matched), edges=sorted(edges), components=components)


def histogram_text(hist: dict[int, int], sep: str = "\t") -> str:
    """Two-column text rendering (length, count) for external plotting."""
    return "\n".join(f"{length}{sep}{count}" for length, count in sorted(hist.items()))
