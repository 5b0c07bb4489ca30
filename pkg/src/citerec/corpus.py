"""Article corpus: loading, validation, and metadata indexing.

The corpus is the single source of truth for article metadata. It is loaded
once from a line-delimited articles file (one JSON record per line) plus an
optional `citing_id,cited_id` edge file, validated, and then treated as
immutable: every downstream component (graph construction, similarity,
recommendation, evaluation) reads from it concurrently without locks.

Reference hygiene happens here, not downstream: self-references and
duplicate references are removed, and references to ids outside the corpus
are dropped and counted rather than treated as errors, since the dataset
only tracks citations among its own articles.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field

ArticleId = str

MIN_YEAR = 1800

_WHITESPACE_RUN = re.compile(r"\s+")


class CorpusFormatError(ValueError):
    """Raised for malformed article records or duplicate article ids."""


def normalize_title(text: str) -> str:
    """Normalize a title for indexing: casefold and collapse whitespace."""
    return _WHITESPACE_RUN.sub(" ", text.casefold()).strip()


@dataclass
class Article:
    """One corpus record.

    ``abstract`` is None when the article has no usable abstract (the loader
    normalizes empty/whitespace-only abstracts to None so the downstream
    missing-abstract rule has an unambiguous predicate). ``references``
    holds only ids that resolve within the corpus. ``citation_count`` is the
    globally recorded count; None when the dataset did not record one.
    """

    id: ArticleId
    title: str
    authors: list[str] = field(default_factory=list)
    publisher: str = ""
    year: int = 0
    abstract: str | None = None
    keywords: list[str] = field(default_factory=list)
    citation_count: int | None = None
    references: list[ArticleId] = field(default_factory=list)

    def has_abstract(self) -> bool:
        return self.abstract is not None


@dataclass
class LoadReport:
    """Counts gathered while loading a corpus."""

    records_parsed: int = 0
    articles_loaded: int = 0
    edge_pairs_read: int = 0
    dangling_references_dropped: int = 0
    self_references_removed: int = 0
    duplicate_references_removed: int = 0

    def summary(self) -> str:
        lines = [
            f"records parsed:               {self.records_parsed}",
            f"articles loaded:              {self.articles_loaded}",
            f"edge pairs read:              {self.edge_pairs_read}",
            f"dangling references dropped:  {self.dangling_references_dropped}",
            f"self references removed:      {self.self_references_removed}",
            f"duplicate references removed: {self.duplicate_references_removed}",
        ]
        return "\n".join(lines)


class Corpus:
    """Immutable id-keyed collection of articles with count indexes."""

    def __init__(self, articles: dict[ArticleId, Article]):
        self.articles = articles
        self.by_year: Counter[int] = Counter(a.year for a in articles.values())
        self.by_journal: Counter[str] = Counter(a.publisher for a in articles.values())
        self._title_index: dict[str, list[ArticleId]] = {}
        for art in articles.values():
            self._title_index.setdefault(normalize_title(art.title), []).append(art.id)

    def __len__(self) -> int:
        return len(self.articles)

    def __contains__(self, article_id: ArticleId) -> bool:
        return article_id in self.articles

    def __iter__(self):
        return iter(self.articles.values())

    def get(self, article_id: ArticleId) -> Article | None:
        return self.articles.get(article_id)

    def article(self, article_id: ArticleId) -> Article:
        try:
            return self.articles[article_id]
        except KeyError:
            raise KeyError(f"unknown article id: {article_id!r}") from None

    def ids_by_title(self, title: str) -> list[ArticleId]:
        """Ids whose normalized title equals the normalized query, if any."""
        return list(self._title_index.get(normalize_title(title), ()))

    def min_year(self) -> int:
        return min(self.by_year) if self.by_year else 0

    def max_year(self) -> int:
        return max(self.by_year) if self.by_year else 0


def yearly_counts(corpus: Corpus) -> dict[int, int]:
    """Number of articles published per year; zero-count years omitted."""
    return dict(sorted(corpus.by_year.items()))


def journal_counts(corpus: Corpus) -> dict[str, int]:
    """Number of articles per journal."""
    return dict(sorted(corpus.by_journal.items()))


def _parse_record(raw: dict, line_no: int) -> Article:
    def fail(msg: str):
        raise CorpusFormatError(f"line {line_no}: {msg}")

    if not isinstance(raw, dict):
        fail("record is not an object")

    article_id = raw.get("id")
    if not isinstance(article_id, str) or not article_id:
        fail("missing or empty 'id'")

    title = raw.get("title")
    if not isinstance(title, str):
        fail(f"{article_id}: missing 'title'")

    year = raw.get("year")
    if isinstance(year, bool) or not isinstance(year, int):
        fail(f"{article_id}: 'year' must be an integer")
    if year < MIN_YEAR:
        fail(f"{article_id}: implausible year {year}")

    authors = raw.get("authors", [])
    if not isinstance(authors, list) or not all(isinstance(a, str) for a in authors):
        fail(f"{article_id}: 'authors' must be an array of strings")

    publisher = raw.get("publisher", "")
    if not isinstance(publisher, str):
        fail(f"{article_id}: 'publisher' must be a string")

    abstract = raw.get("abstract")
    if abstract is not None and not isinstance(abstract, str):
        fail(f"{article_id}: 'abstract' must be a string or null")
    if abstract is not None and not abstract.strip():
        abstract = None

    keywords = raw.get("keywords", [])
    if not isinstance(keywords, list) or not all(isinstance(k, str) for k in keywords):
        fail(f"{article_id}: 'keywords' must be an array of strings")

    citation_count = raw.get("citation_count")
    if citation_count is not None:
        if isinstance(citation_count, bool) or not isinstance(citation_count, int):
            fail(f"{article_id}: 'citation_count' must be an integer")
        if citation_count < 0:
            fail(f"{article_id}: negative citation_count")

    references = raw.get("references", [])
    if not isinstance(references, list) or not all(isinstance(r, str) for r in references):
        fail(f"{article_id}: 'references' must be an array of ids")

    return Article(
        id=article_id,
        title=title,
        authors=list(authors),
        publisher=publisher,
        year=year,
        abstract=abstract,
        keywords=list(keywords),
        citation_count=citation_count,
        references=list(references),
    )


def _read_edge_pairs(edges_path) -> list[tuple[str, str]]:
    pairs: list[tuple[str, str]] = []
    with open(edges_path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = [p.strip() for p in re.split(r"[,\t]", line)]
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise CorpusFormatError(
                    f"{edges_path}: line {line_no}: expected 'citing_id,cited_id'"
                )
            # optional header
            if line_no == 1 and parts[0].casefold() in ("citing_id", "citing", "source"):
                continue
            pairs.append((parts[0], parts[1]))
    return pairs


def load_corpus(articles_path, edges_path=None) -> tuple[Corpus, LoadReport]:
    """Load and validate a corpus from disk.

    References are the union of each record's inline list and any pairs in
    the edge file; duplicates, self-references, and references to unknown
    ids are removed and counted in the report. Duplicate article ids are
    fatal. Deterministic: identical files produce identical corpora.
    """
    report = LoadReport()
    articles: dict[ArticleId, Article] = {}

    with open(articles_path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"line {line_no}: invalid JSON ({exc.msg})") from exc
            art = _parse_record(raw, line_no)
            if art.id in articles:
                raise CorpusFormatError(f"line {line_no}: duplicate article id {art.id!r}")
            articles[art.id] = art
            report.records_parsed += 1

    edge_pairs = _read_edge_pairs(edges_path) if edges_path is not None else []
    report.edge_pairs_read = len(edge_pairs)

    extra_refs: dict[ArticleId, list[ArticleId]] = {}
    for citing, cited in edge_pairs:
        if citing not in articles:
            report.dangling_references_dropped += 1
            continue
        extra_refs.setdefault(citing, []).append(cited)

    for art in articles.values():
        resolved: list[ArticleId] = []
        seen: set[ArticleId] = set()
        for ref in art.references + extra_refs.get(art.id, []):
            if ref == art.id:
                report.self_references_removed += 1
            elif ref in seen:
                report.duplicate_references_removed += 1
            elif ref not in articles:
                report.dangling_references_dropped += 1
            else:
                seen.add(ref)
                resolved.append(ref)
        art.references = resolved

    report.articles_loaded = len(articles)
    return Corpus(articles), report
