"""Leave-nothing-out evaluation: can the engine rediscover known references?

For each evaluated article the ground truth is its own in-corpus reference
list. Candidates are every article reachable within three out-neighbor
queries — the query's direct references stay in the graph, so the task is
ranking them highly among the wider closure, not rediscovering deleted
edges. Metrics: hit@k (fraction of the top k that are true references),
recall@20, hit rate (hit@k with k set to the reference count), and the
rank of the first true reference.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from statistics import mean

import numpy as np

from .corpus import ArticleId, Corpus
from .graph import CitationGraph, out_neighbors
from .recommend import WeightConfig, candidate_sets, resolve_weights, score_candidates
from .textsim import EmbeddingStore

DEFAULT_KS = (1, 5, 10)

# Headline numbers published for the full 190k-article corpus with
# provider embeddings, emitted next to computed results for comparison.
PUBLISHED_REFERENCE_METRICS = {
    "review_mean_hit_rate": 0.70,
    "hit@1": 0.85,
    "hit@5": 0.44,
    "hit@10": 0.28,
    "recall@20": 0.76,
}


@dataclass(frozen=True)
class EvalCase:
    """One article to evaluate, with its ground-truth reference set."""

    article: ArticleId
    ground_truth: frozenset[ArticleId]
    year: int
    total_refs: int | None = None

    def __post_init__(self):
        if not self.ground_truth:
            raise ValueError(f"case {self.article}: ground truth must be non-empty")
        object.__setattr__(self, "ground_truth", frozenset(self.ground_truth))

    @property
    def k_refs(self) -> int:
        return len(self.ground_truth)


@dataclass
class CaseMetrics:
    article: ArticleId
    year: int
    k_refs: int
    total_refs: int | None
    hit: dict[int, float]
    hit_rate: float
    recall20: float
    best_rank: int | None
    candidates: int

    def to_dict(self) -> dict:
        return {
            "article": self.article,
            "year": self.year,
            "refs_in_dataset": self.k_refs,
            "total_refs": self.total_refs,
            **{f"hit@{k}": v for k, v in sorted(self.hit.items())},
            "hit_rate": self.hit_rate,
            "recall@20": self.recall20,
            "best_rank": self.best_rank,
            "candidates": self.candidates,
        }


@dataclass
class EvalReport:
    cases: list[CaseMetrics]
    skipped: list[tuple[ArticleId, str]]
    weights: WeightConfig
    ks: tuple[int, ...]
    aggregates: dict[str, float] = field(default_factory=dict)
    per_year: dict[int, dict[str, float]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "cases": [c.to_dict() for c in self.cases],
            "skipped": [{"article": a, "reason": r} for a, r in self.skipped],
            "aggregates": self.aggregates,
            "per_year": {str(y): v for y, v in sorted(self.per_year.items())},
            "published_reference": PUBLISHED_REFERENCE_METRICS,
            "weights": self.weights.to_flat(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def table_text(self) -> str:
        ks = sorted(self.ks)
        header = ["article", "year", "refs", "total"]
        header += [f"hit@{k}" for k in ks]
        header += ["hit_rate", "recall@20", "best_rank"]
        lines = ["\t".join(header)]
        for c in self.cases:
            row = [
                c.article,
                str(c.year),
                str(c.k_refs),
                "" if c.total_refs is None else str(c.total_refs),
            ]
            row += [f"{c.hit[k]:.4f}" for k in ks]
            row += [
                f"{c.hit_rate:.4f}",
                f"{c.recall20:.4f}",
                "" if c.best_rank is None else str(c.best_rank),
            ]
            lines.append("\t".join(row))

        agg = ["mean", "", str(len(self.cases)), ""]
        agg += [f"{self.aggregates.get(f'hit@{k}', 0.0):.4f}" for k in ks]
        agg += [
            f"{self.aggregates.get('hit_rate', 0.0):.4f}",
            f"{self.aggregates.get('recall@20', 0.0):.4f}",
            f"{self.aggregates.get('best_rank', 0.0):.1f}",
        ]
        lines.append("\t".join(agg))

        pub = PUBLISHED_REFERENCE_METRICS
        ref = ["published", "", "", ""]
        ref += [f"{pub[f'hit@{k}']:.4f}" if f"hit@{k}" in pub else "" for k in ks]
        ref += [f"{pub['review_mean_hit_rate']:.4f}", f"{pub['recall@20']:.4f}", ""]
        lines.append("\t".join(ref))

        if self.per_year:
            lines.append("")
            lines.append("\t".join(["year", "cases", "hit_rate", "recall@20"]))
            for year, row in sorted(self.per_year.items()):
                lines.append(
                    "\t".join(
                        [
                            str(year),
                            str(int(row["cases"])),
                            f"{row['hit_rate']:.4f}",
                            f"{row['recall@20']:.4f}",
                        ]
                    )
                )
        if self.skipped:
            lines.append("")
            for article, reason in self.skipped:
                lines.append(f"skipped\t{article}\t{reason}")
        return "\n".join(lines)


def build_case(
    corpus: Corpus,
    g: CitationGraph,
    article_id: ArticleId,
    total_refs: int | None = None,
) -> EvalCase:
    """Ground truth straight from the graph: the article's out-neighbors."""
    art = corpus.article(article_id)
    truth = out_neighbors(g, article_id)
    return EvalCase(
        article=article_id,
        ground_truth=frozenset(truth),
        year=art.year,
        total_refs=total_refs,
    )


def cases_from_titles(
    corpus: Corpus,
    g: CitationGraph,
    titles: list,
) -> tuple[list[EvalCase], list[tuple[str, str]]]:
    """Resolve titles to cases by exact normalized match; unresolved are reported.

    Entries are either a bare title or a (title, total_refs) pair, where
    total_refs is the article's full reference count including works
    outside the corpus.
    """
    cases: list[EvalCase] = []
    unresolved: list[tuple[str, str]] = []
    for entry in titles:
        title, total = entry if isinstance(entry, tuple) else (entry, None)
        ids = corpus.ids_by_title(title)
        if not ids:
            unresolved.append((title, "no article with this title"))
            continue
        if len(ids) > 1:
            unresolved.append((title, f"ambiguous title ({len(ids)} articles)"))
            continue
        aid = ids[0]
        if not out_neighbors(g, aid):
            unresolved.append((title, "no in-corpus references"))
            continue
        cases.append(build_case(corpus, g, aid, total_refs=total))
    return cases, unresolved


def sample_cases(
    corpus: Corpus,
    g: CitationGraph,
    n: int,
    seed: int = 0,
    min_refs: int = 1,
) -> list[EvalCase]:
    """Seeded uniform sample of articles with at least min_refs in-corpus references."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    eligible = sorted(
        aid for aid in corpus.articles
        if g.out_indptr[g.index(aid) + 1] - g.out_indptr[g.index(aid)] >= min_refs
    )
    if not eligible:
        raise ValueError("no articles with enough in-corpus references to evaluate")
    rng = np.random.default_rng(seed)
    take = min(n, len(eligible))
    chosen = rng.choice(len(eligible), size=take, replace=False)
    return [build_case(corpus, g, eligible[i]) for i in sorted(chosen)]


def evaluate_case(
    corpus: Corpus,
    g: CitationGraph,
    store: EmbeddingStore,
    case: EvalCase,
    weights: WeightConfig | None = None,
    ks: tuple[int, ...] = DEFAULT_KS,
) -> CaseMetrics:
    """Rank the 3-hop closure by weighted similarity and score against truth."""
    weights = resolve_weights(weights)
    candidates = candidate_sets(g, case.article).reference_list
    if not candidates:
        raise ValueError(f"case {case.article}: no candidates within 3 hops")

    ranked = score_candidates(
        corpus, g, store, case.article, candidates, weights.reference_weights
    )
    truth = case.ground_truth
    positions = [i + 1 for i, sa in enumerate(ranked) if sa.id in truth]

    def hit_at(k: int) -> float:
        return sum(1 for p in positions if p <= k) / k

    return CaseMetrics(
        article=case.article,
        year=case.year,
        k_refs=case.k_refs,
        total_refs=case.total_refs,
        hit={k: hit_at(k) for k in ks},
        hit_rate=hit_at(case.k_refs),
        recall20=sum(1 for p in positions if p <= 20) / len(truth),
        best_rank=positions[0] if positions else None,
        candidates=len(ranked),
    )


def run_evaluation(
    corpus: Corpus,
    g: CitationGraph,
    store: EmbeddingStore,
    cases: list[EvalCase],
    weights: WeightConfig | None = None,
    ks: tuple[int, ...] = DEFAULT_KS,
) -> EvalReport:
    weights = resolve_weights(weights)
    metrics: list[CaseMetrics] = []
    skipped: list[tuple[ArticleId, str]] = []
    for case in cases:
        try:
            metrics.append(evaluate_case(corpus, g, store, case, weights, ks))
        except (KeyError, ValueError) as err:
            skipped.append((case.article, str(err)))

    report = EvalReport(cases=metrics, skipped=skipped, weights=weights, ks=ks)
    if metrics:
        report.aggregates = {
            **{f"hit@{k}": mean(c.hit[k] for c in metrics) for k in ks},
            "hit_rate": mean(c.hit_rate for c in metrics),
            "recall@20": mean(c.recall20 for c in metrics),
            "best_rank": mean(c.best_rank for c in metrics if c.best_rank is not None)
            if any(c.best_rank is not None for c in metrics)
            else 0.0,
            "cases": float(len(metrics)),
        }
        by_year: dict[int, list[CaseMetrics]] = {}
        for c in metrics:
            by_year.setdefault(c.year, []).append(c)
        report.per_year = {
            year: {
                "cases": float(len(group)),
                "hit_rate": mean(c.hit_rate for c in group),
                "recall@20": mean(c.recall20 for c in group),
            }
            for year, group in by_year.items()
        }
    return report
