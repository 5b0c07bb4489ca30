"""citerec: literature recommendation over a citation network.

Load a corpus, build its citation graph, embed abstracts, and rank
related articles by a weighted blend of abstract, title, and
network similarity.
"""

from .corpus import Article, Corpus, CorpusFormatError, LoadReport, load_corpus
from .embedding import (
    EmbedCache,
    EmbeddingClient,
    EmbedProviderError,
    EmbedRequest,
    EmbedTransportError,
    OfflineProvider,
    RemoteProvider,
    offline_embed,
)
from .evaluate import (
    EvalCase,
    EvalReport,
    build_case,
    evaluate_case,
    run_evaluation,
    sample_cases,
)
from .graph import (
    CitationGraph,
    UnknownArticleError,
    build_graph,
    density,
    graph_stats,
    is_acyclic,
    k_hop_out_closure,
    keyword_subgraph,
    validate_acyclicity,
)
from .recommend import (
    WEIGHT_PRESETS,
    RecommendationResult,
    WeightConfig,
    WeightConstraintError,
    candidate_sets,
    match_keyword,
    match_title,
    recommend,
)
from .service import Engine, create_app, load_engine
from .textsim import (
    EmbeddingStore,
    abstract_similarity,
    cosine,
    max_min_normalize,
    node_similarity,
    title_similarity,
)

__version__ = "0.1.0"

__all__ = [
    "Article",
    "CitationGraph",
    "Corpus",
    "CorpusFormatError",
    "EmbedCache",
    "EmbedProviderError",
    "EmbedRequest",
    "EmbedTransportError",
    "EmbeddingClient",
    "EmbeddingStore",
    "Engine",
    "EvalCase",
    "EvalReport",
    "LoadReport",
    "OfflineProvider",
    "RecommendationResult",
    "RemoteProvider",
    "UnknownArticleError",
    "WEIGHT_PRESETS",
    "WeightConfig",
    "WeightConstraintError",
    "abstract_similarity",
    "build_case",
    "build_graph",
    "candidate_sets",
    "cosine",
    "create_app",
    "density",
    "evaluate_case",
    "graph_stats",
    "is_acyclic",
    "k_hop_out_closure",
    "keyword_subgraph",
    "load_corpus",
    "load_engine",
    "match_keyword",
    "match_title",
    "max_min_normalize",
    "node_similarity",
    "offline_embed",
    "recommend",
    "run_evaluation",
    "sample_cases",
    "title_similarity",
    "validate_acyclicity",
]
