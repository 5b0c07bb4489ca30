"""Seeded synthetic corpora and graphs for tests and benchmarks.

DAGs are generated constructively: nodes get a random topological order
and every edge points from a later position to an earlier one, so
acyclicity holds by construction rather than by filtering.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from citerec.corpus import Corpus, load_corpus
from citerec.embedding import EmbeddingClient, OfflineProvider
from citerec.graph import CitationGraph, build_graph
from citerec.textsim import EmbeddingStore

WORDS = (
    "adaptive sparse lasso ridge bayesian causal spectral kernel wavelet "
    "bootstrap quantile survival hazard markov network graphical mixture "
    "longitudinal nonparametric penalized regression classification "
    "clustering inference estimation selection shrinkage testing design"
).split()


def random_dag(rng: np.random.Generator, n: int, p: float) -> tuple[np.ndarray, np.ndarray]:
    """Random DAG: returns (dense bool adjacency, edge array of shape (m, 2))."""
    order = rng.permutation(n)  # order[i] = topological position of node i
    adj = np.zeros((n, n), dtype=bool)
    pairs = []
    for u in range(n):
        for v in range(n):
            if order[u] > order[v] and rng.random() < p:
                adj[u, v] = True
                pairs.append((u, v))
    edges = np.array(pairs, dtype=np.int64) if pairs else np.empty((0, 2), dtype=np.int64)
    return adj, edges


def graph_from_adj(adj: np.ndarray) -> CitationGraph:
    ids = [f"n{i:04d}" for i in range(adj.shape[0])]
    us, vs = np.nonzero(adj)
    edges = np.column_stack([us, vs]).astype(np.int64)
    return CitationGraph(ids, edges)


def random_records(
    rng: np.random.Generator,
    n: int,
    p: float = 0.08,
    abstract_rate: float = 0.9,
    year_range: tuple[int, int] = (1981, 2022),
) -> list[dict]:
    """Article records over a random DAG; older articles are the cited ones."""
    adj, _ = random_dag(rng, n, p)
    return records_over(rng, adj, abstract_rate=abstract_rate, year_range=year_range)


def records_over(
    rng: np.random.Generator,
    adj: np.ndarray,
    abstract_rate: float = 0.9,
    year_range: tuple[int, int] = (1981, 2022),
) -> list[dict]:
    """Article records over a given adjacency matrix (row cites column)."""
    n = adj.shape[0]
    # Publication year follows citation direction: cited nodes are older.
    order = np.argsort(np.argsort(adj.sum(axis=0) - adj.sum(axis=1)))
    lo, hi = year_range
    records = []
    for i in range(n):
        refs = [f"n{j:04d}" for j in np.nonzero(adj[i])[0]]
        year = int(lo + (hi - lo) * order[i] / max(n - 1, 1))
        n_words = int(rng.integers(4, 9))
        title = " ".join(rng.choice(WORDS, size=n_words))
        has_abstract = rng.random() < abstract_rate
        records.append(
            {
                "id": f"n{i:04d}",
                "title": title.capitalize(),
                "authors": [f"Author {int(rng.integers(1, 40))}"],
                "publisher": rng.choice(["J Stat", "Ann Prob", "Biometrics"]).item(),
                "year": year,
                "abstract": (
                    "We study " + " ".join(rng.choice(WORDS, size=12)) + "."
                    if has_abstract
                    else None
                ),
                "keywords": list(rng.choice(WORDS, size=2)),
                "citation_count": int(rng.integers(0, 500)),
                "references": refs,
            }
        )
    return records


def write_corpus(tmp_path: Path, records: list[dict], name: str = "articles.jsonl") -> Path:
    path = Path(tmp_path) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n", encoding="utf-8")
    return path


def corpus_from_records(tmp_path: Path, records: list[dict]):
    path = write_corpus(tmp_path, records)
    corpus, report = load_corpus(path)
    return corpus, report, build_graph(corpus)


def offline_store(corpus: Corpus, dim: int = 32, model_tag: str = "offline-test") -> EmbeddingStore:
    client = EmbeddingClient(provider=OfflineProvider(dim=dim), model_tag=model_tag, dim=dim)
    return client.embed_corpus(corpus)
