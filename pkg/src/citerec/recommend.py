"""Recommendation pipeline: match, candidate sets, weighted scoring, outputs.

Given a matched article, the engine builds two candidate sets from the
citation graph (articles within three out-neighbor queries form the
reference list; direct citers form the citation list), scores each
candidate by a user-weighted combination of abstract, title, and node
similarity, and produces three outputs per list: the overall top-k, the
top-k within each 5-year period, and the top-k by a "fundamental" score
that blends normalized citation counts back in.

Each candidate list is ranked independently with its own weight quintuple;
all orderings use one deterministic tie-break (score desc, year desc,
id asc), so identical inputs serialize byte-for-byte identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .corpus import ArticleId, Corpus, normalize_title
from .graph import CitationGraph, in_neighbors, k_hop_out_closure
from .kernels import levenshtein
from .textsim import (
    EmbeddingStore,
    SimilarityTriple,
    abstract_similarity,
    max_min_normalize,
    node_similarity,
    title_similarity,
    tokenize,
)

SIMPLEX_TOLERANCE = 1e-9

DEFAULT_MATCH_THRESHOLD = 0.6


class WeightConstraintError(ValueError):
    """A weight quintuple violates its simplex constraints."""


def _check_simplex(values: tuple[float, ...], names: tuple[str, ...]) -> None:
    for name, value in zip(names, values):
        if value < 0:
            raise WeightConstraintError(f"{name} must be >= 0 (got {value})")
    total = sum(values)
    if abs(total - 1.0) > SIMPLEX_TOLERANCE:
        raise WeightConstraintError(
            f"{'+'.join(names)} must sum to 1 (got {total})"
        )


@dataclass(frozen=True)
class WeightConfig:
    """The ten user weights: (w1..w5) for the reference list, (w6..w10) for citers.

    In each quintuple the first three weigh abstract/title/node similarity
    (they must form a simplex) and the last two weigh normalized citation
    count against the combined similarity (likewise).
    """

    reference_weights: tuple[float, float, float, float, float] = (1 / 3, 1 / 3, 1 / 3, 0.5, 0.5)
    citation_weights: tuple[float, float, float, float, float] = (1 / 3, 1 / 3, 1 / 3, 0.5, 0.5)

    def __post_init__(self):
        ref = tuple(float(x) for x in self.reference_weights)
        cit = tuple(float(x) for x in self.citation_weights)
        if len(ref) != 5 or len(cit) != 5:
            raise WeightConstraintError("each weight group needs exactly 5 values")
        object.__setattr__(self, "reference_weights", ref)
        object.__setattr__(self, "citation_weights", cit)
        _check_simplex(ref[:3], ("w1", "w2", "w3"))
        _check_simplex(ref[3:], ("w4", "w5"))
        _check_simplex(cit[:3], ("w6", "w7", "w8"))
        _check_simplex(cit[3:], ("w9", "w10"))

    @classmethod
    def from_flat(cls, values) -> "WeightConfig":
        vals = tuple(float(x) for x in values)
        if len(vals) != 10:
            raise WeightConstraintError(f"expected 10 weights w1..w10, got {len(vals)}")
        return cls(reference_weights=vals[:5], citation_weights=vals[5:])

    def to_flat(self) -> list[float]:
        return list(self.reference_weights) + list(self.citation_weights)


WEIGHT_PRESETS: dict[str, WeightConfig] = {
    "uniform": WeightConfig(),
    "abstract": WeightConfig((1, 0, 0, 0.5, 0.5), (1, 0, 0, 0.5, 0.5)),
    "network": WeightConfig((0, 0, 1, 0.5, 0.5), (0, 0, 1, 0.5, 0.5)),
    "classics": WeightConfig((1 / 3, 1 / 3, 1 / 3, 1, 0), (1 / 3, 1 / 3, 1 / 3, 1, 0)),
}


def resolve_weights(spec) -> WeightConfig:
    """Accept a WeightConfig, a preset name, or ten flat values."""
    if isinstance(spec, WeightConfig):
        return spec
    if spec is None:
        return WeightConfig()
    if isinstance(spec, str):
        try:
            return WEIGHT_PRESETS[spec]
        except KeyError:
            raise WeightConstraintError(
                f"unknown weight preset {spec!r}; known: {sorted(WEIGHT_PRESETS)}"
            ) from None
    return WeightConfig.from_flat(spec)


@dataclass
class CandidateSets:
    """Candidate articles for one matched article, split by provenance."""

    reference_list: set[ArticleId]
    citation_list: set[ArticleId]


@dataclass
class ScoredArticle:
    id: ArticleId
    sims: SimilarityTriple
    weighted_sim: float
    fundamental_score: float | None
    year: int


@dataclass
class ListRecommendation:
    """The three ranked outputs for one candidate list."""

    overall: list[ScoredArticle] = field(default_factory=list)
    per_period: dict[str, list[ScoredArticle]] = field(default_factory=dict)
    fundamental: list[ScoredArticle] = field(default_factory=list)


@dataclass
class RecommendationResult:
    matched: ArticleId
    reference: ListRecommendation
    citation: ListRecommendation
    weights: WeightConfig
    k: int
    period_len: int

    def to_dict(self, corpus: Corpus) -> dict:
        def rows(items: list[ScoredArticle]) -> list[dict]:
            out = []
            for rank, sa in enumerate(items, start=1):
                art = corpus.article(sa.id)
                out.append(
                    {
                        "rank": rank,
                        "id": sa.id,
                        "title": art.title,
                        "year": sa.year,
                        "abstract_sim": sa.sims.abstract_sim,
                        "abstract_imputed": sa.sims.abstract_imputed,
                        "title_sim": sa.sims.title_sim,
                        "node_sim": sa.sims.node_sim,
                        "weighted_sim": sa.weighted_sim,
                        "fundamental_score": sa.fundamental_score,
                    }
                )
            return out

        def side(rec: ListRecommendation) -> dict:
            return {
                "overall": rows(rec.overall),
                "per_period": {label: rows(items) for label, items in rec.per_period.items()},
                "fundamental": rows(rec.fundamental),
            }

        return {
            "matched": self.matched,
            "reference": side(self.reference),
            "citation": side(self.citation),
            "weights": self.weights.to_flat(),
            "k": self.k,
            "period_len": self.period_len,
        }

    def to_json(self, corpus: Corpus) -> str:
        return json.dumps(self.to_dict(corpus), sort_keys=True)


def _codepoints(text: str) -> np.ndarray:
    return np.frombuffer(text.encode("utf-32-le"), dtype=np.int32)


def fuzzy_score(a: str, b: str) -> float:
    """Normalized edit-distance similarity between two already-normalized strings."""
    if a == b:
        return 1.0
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    dist = levenshtein(_codepoints(a), _codepoints(b))
    return 1.0 - dist / longest


def match_title(
    corpus: Corpus,
    query: str,
    m: int = 10,
    threshold: float = DEFAULT_MATCH_THRESHOLD,
) -> list[tuple[ArticleId, float]]:
    """Top-m articles by fuzzy title score; spelling errors tolerated.

    An exact normalized match scores 1.0 and ranks first. Scores below the
    threshold are dropped, so gibberish yields an empty list.
    """
    if not query.strip():
        raise ValueError("query must be non-empty")
    nq = normalize_title(query)
    max_gap = (1.0 - threshold)  # length difference alone bounds the score

    scored: list[tuple[float, ArticleId]] = []
    for art in corpus:
        nt = normalize_title(art.title)
        longest = max(len(nq), len(nt))
        if longest == 0:
            continue
        if abs(len(nq) - len(nt)) > max_gap * longest:
            continue
        score = fuzzy_score(nq, nt)
        if score >= threshold:
            scored.append((score, art.id))
    scored.sort(key=lambda t: (-t[0], t[1]))
    return [(aid, score) for score, aid in scored[:m]]


def match_keyword(corpus: Corpus, phrase: str, m: int = 10) -> list[tuple[ArticleId, float]]:
    """Articles containing the phrase tokens in title or keywords.

    Score is the fraction of phrase tokens present; full matches rank
    first, ties broken by citation count descending, then id.
    """
    tokens = set(tokenize(phrase))
    if not tokens:
        raise ValueError("phrase must contain at least one token")

    scored: list[tuple[float, int, ArticleId]] = []
    for art in corpus:
        art_tokens = set(tokenize(art.title))
        for kw in art.keywords:
            art_tokens.update(tokenize(kw))
        matched = len(tokens & art_tokens)
        if matched:
            fraction = matched / len(tokens)
            scored.append((fraction, art.citation_count or 0, art.id))
    scored.sort(key=lambda t: (-t[0], -t[1], t[2]))
    return [(aid, fraction) for fraction, _, aid in scored[:m]]


def candidate_sets(g: CitationGraph, matched: ArticleId) -> CandidateSets:
    """Reference list: 3-hop out closure. Citation list: direct citers.

    On an acyclic graph the sets are disjoint; if cycles sneak in, overlap
    is removed from the citation side so no candidate is scored twice.
    """
    reference = k_hop_out_closure(g, matched, 3)
    citation = in_neighbors(g, matched)
    reference.discard(matched)
    citation.discard(matched)
    citation -= reference
    return CandidateSets(reference_list=reference, citation_list=citation)


def weighted_similarity(sims: SimilarityTriple, w: tuple[float, float, float]) -> float:
    """w1*abstract + w2*title + w3*node."""
    return w[0] * sims.abstract_sim + w[1] * sims.title_sim + w[2] * sims.node_sim


def fundamental_scores(
    candidates: list[ScoredArticle],
    citation_counts: list[int],
    w: tuple[float, float],
) -> list[float]:
    """w4 * max-min-normalized citation count + w5 * weighted similarity."""
    if not candidates:
        raise ValueError("candidate list must be non-empty")
    if len(candidates) != len(citation_counts):
        raise ValueError("one citation count per candidate required")
    normalized = max_min_normalize([float(c) for c in citation_counts])
    return [w[0] * nc + w[1] * sa.weighted_sim for nc, sa in zip(normalized, candidates)]


def _rank(items: list[ScoredArticle], score_of, k: int | None) -> list[ScoredArticle]:
    ordered = sorted(items, key=lambda sa: (-score_of(sa), -sa.year, sa.id))
    return ordered if k is None else ordered[:k]


def score_candidates(
    corpus: Corpus,
    g: CitationGraph,
    store: EmbeddingStore,
    matched: ArticleId,
    candidate_ids: set[ArticleId],
    side_weights: tuple[float, float, float, float, float],
) -> list[ScoredArticle]:
    """Score one candidate list against the matched article, fully ranked.

    Similarities are computed within this list only (mean imputation and
    max-min normalization both scope to the list at hand). Citation counts
    fall back to in-network in-degree when the dataset recorded none.
    """
    if not candidate_ids:
        return []
    matched_art = corpus.article(matched)
    ids = sorted(candidate_ids)
    articles = [corpus.article(i) for i in ids]

    abstract = abstract_similarity(matched_art, articles, store)
    node_vals = [sim for _, sim in node_similarity(g, matched, ids)]

    scored: list[ScoredArticle] = []
    for art, (_, abs_sim, imputed), node_sim in zip(articles, abstract, node_vals):
        sims = SimilarityTriple(
            abstract_sim=abs_sim,
            title_sim=title_similarity(matched_art.title, art.title),
            node_sim=node_sim,
            abstract_imputed=imputed,
        )
        scored.append(
            ScoredArticle(
                id=art.id,
                sims=sims,
                weighted_sim=weighted_similarity(sims, side_weights[:3]),
                fundamental_score=None,
                year=art.year,
            )
        )

    counts_for_fundamental = [
        art.citation_count
        if art.citation_count is not None
        else int(g.in_indptr[g.index(art.id) + 1] - g.in_indptr[g.index(art.id)])
        for art in articles
    ]
    for sa, fund in zip(scored, fundamental_scores(scored, counts_for_fundamental, side_weights[3:])):
        sa.fundamental_score = fund
    return _rank(scored, lambda sa: sa.weighted_sim, None)


def _period_label(year: int, anchor: int, period_len: int, max_year: int) -> str:
    start = anchor + ((year - anchor) // period_len) * period_len
    end = min(start + period_len - 1, max_year)
    return f"{start}-{end}"


def _build_side(
    corpus: Corpus,
    g: CitationGraph,
    store: EmbeddingStore,
    matched: ArticleId,
    ids: set[ArticleId],
    side_weights: tuple[float, float, float, float, float],
    k: int,
    period_len: int,
) -> ListRecommendation:
    scored = score_candidates(corpus, g, store, matched, ids, side_weights)
    if not scored:
        return ListRecommendation()

    anchor = corpus.min_year()
    max_year = corpus.max_year()
    by_period: dict[str, list[ScoredArticle]] = {}
    for sa in scored:
        by_period.setdefault(_period_label(sa.year, anchor, period_len, max_year), []).append(sa)

    return ListRecommendation(
        overall=_rank(scored, lambda sa: sa.weighted_sim, k),
        per_period={
            label: _rank(items, lambda sa: sa.weighted_sim, k)
            for label, items in sorted(by_period.items())
        },
        fundamental=_rank(scored, lambda sa: sa.fundamental_score, k),
    )


def recommend(
    corpus: Corpus,
    g: CitationGraph,
    store: EmbeddingStore,
    matched: ArticleId,
    weights: WeightConfig | None = None,
    k: int = 10,
    period_len: int = 5,
    lists: tuple[str, ...] = ("reference", "citation"),
) -> RecommendationResult:
    """Full recommendation for one matched article.

    A side with no candidates (for instance a brand-new article with no
    citers) yields empty outputs rather than an error.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if period_len < 1:
        raise ValueError(f"period_len must be >= 1, got {period_len}")
    weights = resolve_weights(weights)
    corpus.article(matched)  # raises KeyError for unknown ids
    sets = candidate_sets(g, matched)

    empty = ListRecommendation()
    reference = (
        _build_side(corpus, g, store, matched, sets.reference_list,
                    weights.reference_weights, k, period_len)
        if "reference" in lists
        else empty
    )
    citation = (
        _build_side(corpus, g, store, matched, sets.citation_list,
                    weights.citation_weights, k, period_len)
        if "citation" in lists
        else empty
    )
    return RecommendationResult(
        matched=matched,
        reference=reference,
        citation=citation,
        weights=weights,
        k=k,
        period_len=period_len,
    )
