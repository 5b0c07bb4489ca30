"""HTTP face of the engine: a versioned JSON API under /v1.

The app is built by a factory so tests can mount a small in-memory engine.
Every route answers 503 until an engine is attached, 404 for unknown
article ids, and 400 with the violated constraint spelled out when a
weight vector breaks its simplex requirements.
"""

from __future__ import annotations

from dataclasses import dataclass

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import kernels
from .config import EngineConfig
from .corpus import Corpus, LoadReport, load_corpus
from .evaluate import PUBLISHED_REFERENCE_METRICS
from .graph import CitationGraph, build_graph, graph_stats
from .recommend import (
    WeightConstraintError,
    match_keyword,
    match_title,
    recommend,
    resolve_weights,
)
from .textsim import EmbeddingStore


@dataclass
class Engine:
    corpus: Corpus
    graph: CitationGraph
    store: EmbeddingStore
    config: EngineConfig
    load_report: LoadReport | None = None


def load_engine(config: EngineConfig) -> Engine:
    """Build a ready engine from configuration paths."""
    if not config.articles_path:
        raise ValueError("articles_path is required to load the engine")
    corpus, report = load_corpus(config.articles_path, config.edges_path)
    graph = build_graph(corpus)
    store = _load_store(config)
    return Engine(corpus=corpus, graph=graph, store=store, config=config, load_report=report)


def _load_store(config: EngineConfig) -> EmbeddingStore:
    if not config.embeddings_path:
        return EmbeddingStore(model_tag=config.model_tag, dim=config.dim)
    path = str(config.embeddings_path)
    if path.endswith(".bin"):
        return EmbeddingStore.load_binary(path)
    return EmbeddingStore.load_text(path)


class RecommendBody(BaseModel):
    matched_id: str
    weights: list[float] | str | None = None
    k: int = 10
    period_len: int = 5
    lists: list[str] = ["reference", "citation"]


def create_app(engine: Engine | None = None, cors_origins: list[str] | None = None) -> FastAPI:
    app = FastAPI(title="citerec", version="1.0")
    app.state.engine = engine

    origins = cors_origins
    if origins is None:
        origins = engine.config.cors_origins if engine else ["*"]
    app.add_middleware(
        CORSMiddleware,
        allow_origins=origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def current() -> Engine:
        eng = app.state.engine
        if eng is None:
            raise HTTPException(status_code=503, detail="engine not loaded yet")
        return eng

    @app.get("/v1/healthz")
    def healthz():
        eng = app.state.engine
        return {
            "status": "ok",
            "ready": eng is not None,
            "kernel_backend": kernels.BACKEND,
            "articles": len(eng.corpus) if eng else 0,
            "edges": eng.graph.m if eng else 0,
        }

    @app.get("/v1/stats")
    def stats():
        eng = current()
        gs = graph_stats(eng.graph)
        return {
            "articles": gs.n,
            "edges": gs.m,
            "density": gs.density,
            "density_pct": gs.density * 100.0,
            "max_in_degree": gs.max_in_degree,
            "acyclic": gs.acyclic,
            "year_min": eng.corpus.min_year(),
            "year_max": eng.corpus.max_year(),
            "journals": len(eng.corpus.by_journal),
            "embeddings": len(eng.store.ids()),
            "kernel_backend": kernels.BACKEND,
        }

    @app.get("/v1/search")
    def search(
        q: str = Query(..., min_length=1),
        mode: str = Query("title"),
        m: int = Query(10, ge=1, le=100),
    ):
        eng = current()
        if mode == "title":
            matches = match_title(eng.corpus, q, m=m)
        elif mode == "keyword":
            matches = match_keyword(eng.corpus, q, m=m)
        else:
            raise HTTPException(status_code=400, detail="mode must be 'title' or 'keyword'")
        results = []
        for aid, score in matches:
            art = eng.corpus.article(aid)
            results.append(
                {
                    "id": aid,
                    "score": score,
                    "title": art.title,
                    "year": art.year,
                    "publisher": art.publisher,
                }
            )
        return {"query": q, "mode": mode, "results": results}

    @app.get("/v1/article/{article_id}")
    def article(article_id: str):
        eng = current()
        art = eng.corpus.get(article_id)
        if art is None:
            raise HTTPException(status_code=404, detail=f"unknown article id: {article_id}")
        node = eng.graph.index(article_id)
        out_deg = int(eng.graph.out_indptr[node + 1] - eng.graph.out_indptr[node])
        in_deg = int(eng.graph.in_indptr[node + 1] - eng.graph.in_indptr[node])
        return {
            "id": art.id,
            "title": art.title,
            "authors": art.authors,
            "publisher": art.publisher,
            "year": art.year,
            "abstract": art.abstract,
            "keywords": art.keywords,
            "citation_count": art.citation_count,
            "references_in_corpus": out_deg,
            "cited_by_in_corpus": in_deg,
        }

    @app.post("/v1/recommend")
    def recommend_route(body: RecommendBody):
        eng = current()
        try:
            weights = resolve_weights(body.weights)
        except WeightConstraintError as err:
            raise HTTPException(status_code=400, detail=str(err)) from None
        if eng.corpus.get(body.matched_id) is None:
            raise HTTPException(
                status_code=404, detail=f"unknown article id: {body.matched_id}"
            )
        try:
            result = recommend(
                eng.corpus,
                eng.graph,
                eng.store,
                body.matched_id,
                weights=weights,
                k=body.k,
                period_len=body.period_len,
                lists=tuple(body.lists),
            )
        except ValueError as err:
            raise HTTPException(status_code=400, detail=str(err)) from None
        return result.to_dict(eng.corpus)

    @app.get("/v1/reference-metrics")
    def reference_metrics():
        return PUBLISHED_REFERENCE_METRICS

    return app
