"""Command-line entry points.

Usage problems (bad flags, malformed weights) exit 2; data problems
(unreadable corpus, unknown ids, failed validation) exit 1. Every command
that produces a document accepts --out to write it to a file instead of
stdout.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from . import kernels
from .config import EngineConfig
from .corpus import CorpusFormatError, load_corpus
from .embedding import (
    EmbedCache,
    EmbeddingClient,
    EmbedProviderError,
    EmbedTransportError,
    OfflineProvider,
    RemoteProvider,
)
from .evaluate import cases_from_titles, run_evaluation, sample_cases
from .graph import build_graph, graph_stats, keyword_subgraph, validate_acyclicity
from .recommend import (
    WEIGHT_PRESETS,
    WeightConstraintError,
    match_keyword,
    match_title,
    recommend,
    resolve_weights,
)
from .service import Engine, create_app, load_engine

log = logging.getLogger(__name__)

REVIEW_CASES_RESOURCE = "review_cases.txt"


def _parse_weights(_ctx, _param, value):
    if value is None:
        return None
    if value in WEIGHT_PRESETS:
        return WEIGHT_PRESETS[value]
    try:
        parts = [float(x) for x in value.split(",")]
    except ValueError:
        raise click.UsageError(
            f"--weights must be a preset ({', '.join(sorted(WEIGHT_PRESETS))}) "
            f"or 10 comma-separated numbers, got {value!r}"
        ) from None
    try:
        return resolve_weights(parts)
    except WeightConstraintError as err:
        raise click.UsageError(str(err)) from None


def _config_from(config_path, articles, edges, embeddings) -> EngineConfig:
    if config_path:
        try:
            cfg = EngineConfig.from_file(config_path)
        except (OSError, ValueError) as err:
            raise click.ClickException(f"config: {err}") from None
    else:
        cfg = EngineConfig()
    if articles:
        cfg.articles_path = articles
    if edges:
        cfg.edges_path = edges
    if embeddings:
        cfg.embeddings_path = embeddings
    if not cfg.articles_path:
        raise click.UsageError("an articles file is required (--articles or config)")
    return cfg


def _load(cfg: EngineConfig) -> Engine:
    try:
        return load_engine(cfg)
    except (OSError, CorpusFormatError, ValueError) as err:
        raise click.ClickException(str(err)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + ("" if text.endswith("\n") else "\n"), encoding="utf-8")
    else:
        click.echo(text)


def _shared_options(fn):
    fn = click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                      default=None, help="JSON config file.")(fn)
    fn = click.option("--articles", type=click.Path(exists=True, dir_okay=False),
                      default=None, help="Articles file (JSON lines).")(fn)
    fn = click.option("--edges", type=click.Path(exists=True, dir_okay=False),
                      default=None, help="Optional edge-pair file.")(fn)
    fn = click.option("--embeddings", type=click.Path(exists=True, dir_okay=False),
                      default=None, help="Embedding store (.txt or .bin).")(fn)
    return fn


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
def main(verbose: bool):
    """Literature recommendation over a citation network."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


@main.command()
@_shared_options
def ingest(config_path, articles, edges, embeddings):
    """Load the corpus and print a cleaning report."""
    cfg = _config_from(config_path, articles, edges, embeddings)
    engine = _load(cfg)
    click.echo(engine.load_report.summary())


@main.command()
@_shared_options
def validate(config_path, articles, edges, embeddings):
    """Check structural invariants; exit 1 if the graph has a cycle."""
    cfg = _config_from(config_path, articles, edges, embeddings)
    engine = _load(cfg)
    click.echo(engine.load_report.summary())
    acyclic, witness = validate_acyclicity(engine.graph)
    if acyclic:
        click.echo("acyclic: yes")
    else:
        click.echo(f"acyclic: no (cycle: {' -> '.join(witness)})")
        raise click.ClickException("citation graph contains a cycle")


@main.command()
@_shared_options
@click.option("--years", is_flag=True, help="Also print per-year article counts.")
@click.option("--out", default=None, help="Write to a file instead of stdout.")
def stats(config_path, articles, edges, embeddings, years, out):
    """Print corpus and graph statistics."""
    cfg = _config_from(config_path, articles, edges, embeddings)
    engine = _load(cfg)
    lines = [graph_stats(engine.graph).text_block()]
    lines.append(f"kernel backend: {kernels.BACKEND}")
    if years:
        lines.append("")
        lines.append("year\tarticles")
        for year, count in sorted(engine.corpus.by_year.items()):
            lines.append(f"{year}\t{count}")
    _emit("\n".join(lines), out)


@main.command()
@_shared_options
@click.option("--offline", is_flag=True,
              help="Derive embeddings locally instead of calling a provider.")
@click.option("--endpoint", default=None, help="Embedding provider URL.")
@click.option("--cache-dir", default=None, help="On-disk embedding cache directory.")
@click.option("--out", "out_path", required=True,
              help="Store file to write (.bin for binary, anything else text).")
def embed(config_path, articles, edges, embeddings, offline, endpoint, cache_dir, out_path):
    """Embed every abstract in the corpus and write the store."""
    cfg = _config_from(config_path, articles, edges, embeddings)
    if endpoint:
        cfg.endpoint = endpoint
    engine = _load(cfg)

    if offline:
        provider = OfflineProvider(dim=cfg.dim)
    elif cfg.endpoint:
        provider = RemoteProvider(cfg.endpoint, api_key_env=cfg.api_key_env)
    else:
        raise click.UsageError("pass --offline or configure an endpoint")

    cache = EmbedCache(cache_dir) if cache_dir or cfg.cache_dir else None
    if cache is None and cfg.cache_dir:
        cache = EmbedCache(cfg.cache_dir)
    client = EmbeddingClient(
        provider=provider,
        cache=cache,
        model_tag=cfg.model_tag,
        dim=cfg.dim,
        batch_size=cfg.batch_size,
        max_in_flight=cfg.max_in_flight,
        retries=cfg.retries,
    )
    try:
        store = client.embed_corpus(engine.corpus)
    except (EmbedTransportError, EmbedProviderError) as err:
        raise click.ClickException(f"embedding failed: {err}") from None
    if str(out_path).endswith(".bin"):
        store.save_binary(out_path)
    else:
        store.save_text(out_path)
    click.echo(f"embedded {len(store.ids())} abstracts -> {out_path}")


@main.command()
@_shared_options
@click.option("--mode", type=click.Choice(["title", "keyword"]), default="title")
@click.option("-m", "--max-results", default=10, show_default=True)
@click.option("--subgraph", is_flag=True,
              help="With --mode keyword: also report the induced subgraph.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of a table.")
@click.option("--out", default=None, help="Write to a file instead of stdout.")
@click.argument("query")
def search(config_path, articles, edges, embeddings, mode, max_results,
           subgraph, as_json, out, query):
    """Find articles by fuzzy title or by keyword tokens."""
    cfg = _config_from(config_path, articles, edges, embeddings)
    engine = _load(cfg)
    try:
        if mode == "title":
            matches = match_title(engine.corpus, query, m=max_results)
        else:
            matches = match_keyword(engine.corpus, query, m=max_results)
    except ValueError as err:
        raise click.UsageError(str(err)) from None

    if as_json:
        payload = [
            {"id": aid, "score": score, "title": engine.corpus.article(aid).title,
             "year": engine.corpus.article(aid).year}
            for aid, score in matches
        ]
        doc = {"query": query, "mode": mode, "results": payload}
        if subgraph and mode == "keyword":
            sub = keyword_subgraph(engine.corpus, engine.graph, query)
            doc["subgraph"] = {
                "articles": len(sub.nodes),
                "edges": len(sub.edges),
                "largest_component": len(sub.components[0]) if sub.components else 0,
            }
        _emit(json.dumps(doc, sort_keys=True), out)
        return

    lines = ["score\tid\tyear\ttitle"]
    for aid, score in matches:
        art = engine.corpus.article(aid)
        lines.append(f"{score:.4f}\t{aid}\t{art.year}\t{art.title}")
    if not matches:
        lines.append("(no matches)")
    if subgraph and mode == "keyword":
        sub = keyword_subgraph(engine.corpus, engine.graph, query)
        largest = len(sub.components[0]) if sub.components else 0
        lines.append("")
        lines.append(
            f"subgraph: {len(sub.nodes)} articles, {len(sub.edges)} edges, "
            f"largest weak component {largest}"
        )
    _emit("\n".join(lines), out)


@main.command(name="recommend")
@_shared_options
@click.option("--id", "article_id", default=None, help="Matched article id.")
@click.option("--title", "title_query", default=None,
              help="Resolve the matched article by fuzzy title instead.")
@click.option("--weights", callback=_parse_weights, default=None,
              help="Preset name or 10 comma-separated values w1..w10.")
@click.option("-k", "--top-k", default=10, show_default=True)
@click.option("--period-len", default=5, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of tables.")
@click.option("--out", default=None, help="Write to a file instead of stdout.")
def recommend_cmd(config_path, articles, edges, embeddings, article_id, title_query,
                  weights, top_k, period_len, as_json, out):
    """Recommend related articles for one matched article."""
    if bool(article_id) == bool(title_query):
        raise click.UsageError("pass exactly one of --id or --title")
    cfg = _config_from(config_path, articles, edges, embeddings)
    engine = _load(cfg)

    if title_query:
        matches = match_title(engine.corpus, title_query, m=1)
        if not matches:
            raise click.ClickException(f"no article matches title {title_query!r}")
        article_id = matches[0][0]
        click.echo(f"matched: {article_id} (score {matches[0][1]:.4f})", err=True)
    elif article_id not in engine.corpus:
        raise click.ClickException(f"unknown article id: {article_id}")

    try:
        result = recommend(
            engine.corpus, engine.graph, engine.store, article_id,
            weights=weights, k=top_k, period_len=period_len,
        )
    except ValueError as err:
        raise click.ClickException(str(err)) from None

    if as_json:
        _emit(result.to_json(engine.corpus), out)
        return

    doc = result.to_dict(engine.corpus)
    lines: list[str] = []
    for side in ("reference", "citation"):
        block = doc[side]
        lines.append(f"== {side} list ==")
        lines.append(_rows_table(block["overall"], "top overall"))
        for label in sorted(block["per_period"]):
            lines.append(_rows_table(block["per_period"][label], f"period {label}"))
        lines.append(_rows_table(block["fundamental"], "top fundamental"))
    _emit("\n".join(lines), out)


def _rows_table(rows: list[dict], caption: str) -> str:
    lines = [f"-- {caption} --"]
    if not rows:
        lines.append("(empty)")
        return "\n".join(lines)
    for r in rows:
        fund = "" if r["fundamental_score"] is None else f"\t{r['fundamental_score']:.4f}"
        lines.append(
            f"{r['rank']}\t{r['weighted_sim']:.4f}{fund}\t{r['id']}\t{r['year']}\t{r['title']}"
        )
    return "\n".join(lines)


def _review_cases() -> list[tuple[str, int | None]]:
    from importlib.resources import files

    text = files("citerec.data").joinpath(REVIEW_CASES_RESOURCE).read_text(encoding="utf-8")
    entries: list[tuple[str, int | None]] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        title, _, total = line.partition("\t")
        entries.append((title.strip(), int(total) if total.strip() else None))
    return entries


@main.command()
@_shared_options
@click.option("--sample", "sample_n", type=int, default=None,
              help="Evaluate a seeded random sample of this many articles.")
@click.option("--seed", default=0, show_default=True)
@click.option("--case", "case_ids", multiple=True, help="Evaluate this article id (repeatable).")
@click.option("--review", is_flag=True, help="Evaluate the packaged review-article set.")
@click.option("--min-refs", default=1, show_default=True,
              help="Sampling floor on in-corpus references.")
@click.option("--weights", callback=_parse_weights, default=None,
              help="Preset name or 10 comma-separated values w1..w10.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of a table.")
@click.option("--out", default=None, help="Write to a file instead of stdout.")
def evaluate(config_path, articles, edges, embeddings, sample_n, seed, case_ids,
             review, min_refs, weights, as_json, out):
    """Score reference rediscovery for chosen articles."""
    picked = sum([sample_n is not None, bool(case_ids), review])
    if picked != 1:
        raise click.UsageError("pass exactly one of --sample, --case, or --review")
    cfg = _config_from(config_path, articles, edges, embeddings)
    engine = _load(cfg)

    from .evaluate import build_case

    if sample_n is not None:
        try:
            cases = sample_cases(engine.corpus, engine.graph, sample_n,
                                 seed=seed, min_refs=min_refs)
        except ValueError as err:
            raise click.ClickException(str(err)) from None
    elif case_ids:
        cases = []
        for cid in case_ids:
            if cid not in engine.corpus:
                raise click.ClickException(f"unknown article id: {cid}")
            try:
                cases.append(build_case(engine.corpus, engine.graph, cid))
            except ValueError as err:
                raise click.ClickException(str(err)) from None
    else:
        cases, unresolved = cases_from_titles(engine.corpus, engine.graph, _review_cases())
        for title, reason in unresolved:
            click.echo(f"unresolved review case: {title!r} ({reason})", err=True)
        if not cases:
            raise click.ClickException("no review case resolved against this corpus")

    report = run_evaluation(engine.corpus, engine.graph, engine.store, cases, weights=weights)
    _emit(report.to_json() if as_json else report.table_text(), out)


@main.command()
@_shared_options
@click.option("--host", default=None, help="Bind address (default from config).")
@click.option("--port", type=int, default=None, help="Port (default from config).")
def serve(config_path, articles, edges, embeddings, host, port):
    """Load the engine and serve the /v1 HTTP API."""
    import uvicorn

    cfg = _config_from(config_path, articles, edges, embeddings)
    engine = _load(cfg)
    app = create_app(engine)
    uvicorn.run(app, host=host or cfg.host, port=port or cfg.port, log_level="info")


if __name__ == "__main__":
    main(prog_name="citerec")
