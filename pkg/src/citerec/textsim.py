"""Content-based similarity: abstract embeddings and bag-of-words titles.

Abstract similarity is the cosine between stored embedding vectors, with a
mean-imputation rule when either abstract is missing: the imputed value is
the arithmetic mean of the cosines that could be computed in the same call,
so it stays comparable to the other scores in that ranking. Title
similarity is cosine over token-count vectors (lowercase, split on
non-alphanumeric runs, no stemming or stopwords). Node similarity is the
max-min regularized common-out-neighbor count.

All functions are pure given immutable inputs; the embedding store is
read-only once populated.
"""

from __future__ import annotations

import logging
import re
import struct
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .corpus import Article, ArticleId
from .graph import CitationGraph, common_out_neighbors

log = logging.getLogger(__name__)

DEFAULT_DIM = 1536

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)

_BINARY_MAGIC = b"CRECEMB1"


@dataclass
class SimilarityTriple:
    """The three per-candidate similarities feeding the weighted score."""

    abstract_sim: float
    title_sim: float
    node_sim: float
    abstract_imputed: bool = False


class DimensionMismatchError(ValueError):
    """Vector length disagrees with the store dimension."""


class EmbeddingStore:
    """Article-id keyed embedding vectors, all of one fixed dimension."""

    def __init__(self, model_tag: str, dim: int = DEFAULT_DIM):
        if dim < 1:
            raise ValueError(f"dim must be positive, got {dim}")
        self.model_tag = model_tag
        self.dim = dim
        self._vectors: dict[ArticleId, np.ndarray] = {}
        self._matrix: np.ndarray | None = None
        self._row_index: dict[ArticleId, int] = {}

    def __len__(self) -> int:
        return len(self._vectors)

    def __contains__(self, article_id: ArticleId) -> bool:
        return article_id in self._vectors

    def ids(self) -> list[ArticleId]:
        return list(self._vectors.keys())

    def add(self, article_id: ArticleId, vector) -> None:
        vec = np.asarray(vector, dtype=np.float32)
        if vec.ndim != 1 or vec.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"vector for {article_id!r} has length {vec.shape}, store dim is {self.dim}"
            )
        if not np.all(np.isfinite(vec)):
            raise ValueError(f"vector for {article_id!r} contains non-finite entries")
        self._vectors[article_id] = vec
        self._matrix = None  # invalidate the gathered-row cache

    def get(self, article_id: ArticleId) -> np.ndarray | None:
        return self._vectors.get(article_id)

    def _unit_rows(self) -> tuple[np.ndarray, dict[ArticleId, int]]:
        """Row-normalized matrix of all vectors, built lazily (zero rows stay zero)."""
        if self._matrix is None:
            ids = list(self._vectors.keys())
            mat = np.stack([self._vectors[i] for i in ids]) if ids else np.empty((0, self.dim), np.float32)
            norms = np.linalg.norm(mat, axis=1, keepdims=True)
            np.divide(mat, norms, out=mat, where=norms > 0)
            self._matrix = mat
            self._row_index = {aid: r for r, aid in enumerate(ids)}
        return self._matrix, self._row_index

    def unit_vector(self, article_id: ArticleId) -> np.ndarray | None:
        """Unit-norm copy of a stored vector (None if absent or zero-norm)."""
        mat, index = self._unit_rows()
        row = index.get(article_id)
        if row is None:
            return None
        return mat[row]

    # -- persistence ---------------------------------------------------

    def save_text(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"{self.model_tag} {self.dim} {len(self._vectors)}\n")
            for aid, vec in self._vectors.items():
                values = " ".join(repr(float(x)) for x in vec)
                fh.write(f"{aid} {values}\n")

    @classmethod
    def load_text(cls, path) -> "EmbeddingStore":
        # dim and count are the last two header tokens and each record's
        # values are its last dim tokens, so tags and ids may contain spaces.
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n")
            try:
                model_tag, dim_s, count_s = header.rsplit(maxsplit=2)
                dim, count = int(dim_s), int(count_s)
            except ValueError:
                raise ValueError(
                    f"{path}: bad header, expected 'model_tag dim count'"
                ) from None
            store = cls(model_tag, dim)
            for line in fh:
                parts = line.split()
                if not parts:
                    continue
                if len(parts) < dim + 1:
                    raise ValueError(
                        f"{path}: record for {parts[0]!r} has {len(parts) - 1} values, expected {dim}"
                    )
                aid = " ".join(parts[: len(parts) - dim])
                store.add(aid, np.array([float(x) for x in parts[-dim:]], dtype=np.float32))
        if len(store) != count:
            raise ValueError(f"{path}: header count {count} != {len(store)} records")
        return store

    def save_binary(self, path) -> None:
        """16-byte header (magic, dim, count) + little-endian float32 rows.

        Rows are written in id-sorted order; ids go to a ``<path>.ids``
        sidecar, one per line. Round-trips bit-exactly.
        """
        ids = sorted(self._vectors.keys())
        with open(path, "wb") as fh:
            fh.write(_BINARY_MAGIC)
            fh.write(struct.pack("<II", self.dim, len(ids)))
            for aid in ids:
                fh.write(self._vectors[aid].astype("<f4", copy=False).tobytes())
        with open(f"{path}.ids", "w", encoding="utf-8") as fh:
            fh.writelines(f"{aid}\n" for aid in ids)
        with open(f"{path}.tag", "w", encoding="utf-8") as fh:
            fh.write(self.model_tag + "\n")

    @classmethod
    def load_binary(cls, path) -> "EmbeddingStore":
        with open(f"{path}.ids", encoding="utf-8") as fh:
            ids = [line.rstrip("\n") for line in fh if line.strip()]
        try:
            with open(f"{path}.tag", encoding="utf-8") as fh:
                model_tag = fh.read().strip()
        except FileNotFoundError:
            model_tag = "unknown"
        with open(path, "rb") as fh:
            magic = fh.read(8)
            if magic != _BINARY_MAGIC:
                raise ValueError(f"{path}: bad magic {magic!r}")
            dim, count = struct.unpack("<II", fh.read(8))
            if count != len(ids):
                raise ValueError(f"{path}: header count {count} != {len(ids)} sidecar ids")
            store = cls(model_tag, dim)
            data = np.frombuffer(fh.read(), dtype="<f4")
        if data.size != count * dim:
            raise ValueError(f"{path}: expected {count * dim} floats, found {data.size}")
        for row, aid in enumerate(ids):
            store.add(aid, data[row * dim:(row + 1) * dim])
        return store


def cosine(u, v) -> float:
    """Cosine similarity u.v / (|u||v|), in [-1, 1] up to rounding.

    A zero-norm operand yields 0.0 (logged) rather than an exception, so
    degenerate vectors cannot break the recommendation path.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"length mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        log.debug("cosine of zero-norm vector defined as 0.0")
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def abstract_similarity(
    query: Article,
    candidates: list[Article],
    store: EmbeddingStore,
) -> list[tuple[ArticleId, float, bool]]:
    """Abstract-embedding cosine per candidate, with mean imputation.

    A pair is computable when both the query and the candidate have stored
    embeddings. Non-computable pairs get the arithmetic mean of the
    computed cosines in this call and are flagged imputed; when nothing is
    computable, every value is 0.0 and flagged.
    """
    if not candidates:
        raise ValueError("candidates must be non-empty")

    # Vectors are stored float32 but similarities are computed in float64 so
    # the batched path agrees with the scalar cosine() on the same inputs.
    query_vec = store.get(query.id)
    values: dict[ArticleId, float] = {}
    if query_vec is not None:
        q = query_vec.astype(np.float64)
        q_norm = float(np.linalg.norm(q))
        if q_norm > 0.0:
            rows = []
            row_ids = []
            for cand in candidates:
                vec = store.get(cand.id)
                if vec is not None:
                    rows.append(vec)
                    row_ids.append(cand.id)
            if rows:
                mat = np.stack(rows).astype(np.float64)
                norms = np.linalg.norm(mat, axis=1) * q_norm
                dots = mat @ q
                sims = np.divide(dots, norms, out=np.zeros_like(dots), where=norms > 0)
                values = {aid: float(s) for aid, s in zip(row_ids, sims)}

    mean = sum(values.values()) / len(values) if values else 0.0
    out: list[tuple[ArticleId, float, bool]] = []
    for cand in candidates:
        if cand.id in values:
            out.append((cand.id, values[cand.id], False))
        else:
            out.append((cand.id, mean, True))
    return out


def tokenize(text: str) -> list[str]:
    """Lowercased tokens split on non-alphanumeric runs."""
    return _TOKEN.findall(text.lower())


def title_vector(title: str) -> Counter[str]:
    """Bag-of-words term counts for a title (all occurrences counted)."""
    return Counter(tokenize(title))


def title_similarity(a: str, b: str) -> float:
    """Cosine between the two titles' term-count vectors; 0 if either is empty."""
    va = title_vector(a)
    vb = title_vector(b)
    if not va or not vb:
        return 0.0
    dot = sum(count * vb[term] for term, count in va.items())
    norm_a = sum(c * c for c in va.values()) ** 0.5
    norm_b = sum(c * c for c in vb.values()) ** 0.5
    return dot / (norm_a * norm_b)


def max_min_normalize(values: list[float]) -> list[float]:
    """(x - min) / (max - min); all zeros when the range is degenerate.

    A signal with no spread should not shift a ranking, so max == min maps
    everything to 0 and lets the other similarities decide.
    """
    if not values:
        return []
    lo = min(values)
    hi = max(values)
    if hi == lo:
        return [0.0] * len(values)
    return [(x - lo) / (hi - lo) for x in values]


def node_similarity(
    g: CitationGraph,
    query: ArticleId,
    candidates: list[ArticleId],
) -> list[tuple[ArticleId, float]]:
    """Max-min regularized common-out-neighbor counts against the query."""
    if not candidates:
        raise ValueError("candidates must be non-empty")
    counts = [float(common_out_neighbors(g, query, cand)) for cand in candidates]
    return list(zip(candidates, max_min_normalize(counts)))
