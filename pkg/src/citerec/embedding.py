"""Embedding acquisition: remote provider client, offline stand-in, disk cache.

The engine must run with or without network access. The remote provider
speaks the common embeddings-API shape (POST a batch of texts and a model
tag, get same-order vectors back); the offline provider derives a
deterministic pseudo-random unit vector from each text's digest, which
keeps every downstream computation exercisable without a vendor account.

Caching is content-addressed: digest(model_tag + normalized text) -> vector,
one .npy file per entry. The cache is consulted before any provider call
and written before results are returned, so re-embedding an unchanged
corpus performs zero remote calls and an incremental update embeds only
the new texts.
"""

from __future__ import annotations

import hashlib
import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Corpus
from .textsim import DEFAULT_DIM, DimensionMismatchError, EmbeddingStore

log = logging.getLogger(__name__)


class EmbedProviderError(RuntimeError):
    """Provider rejected the request; not retryable."""

    def __init__(self, message: str, text_index: int | None = None):
        super().__init__(message if text_index is None
                         else f"{message} (text index {text_index})")
        self.text_index = text_index


class EmbedTransportError(RuntimeError):
    """Network-level failure that survived the retry budget."""


def normalize_text(text: str) -> str:
    """Trim and collapse whitespace so incidental spacing can't miss the cache."""
    return " ".join(text.split())


def text_digest(model_tag: str, text: str) -> str:
    payload = f"{model_tag}\x00{normalize_text(text)}".encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


@dataclass
class EmbedRequest:
    """One batch of texts bound for a provider."""

    texts: list[str]
    model_tag: str

    def __post_init__(self):
        if not self.texts:
            raise ValueError("batch must contain at least one text")
        for i, t in enumerate(self.texts):
            if not t or not t.strip():
                raise ValueError(f"text at index {i} is empty")


def offline_embed(text: str, dim: int = DEFAULT_DIM) -> np.ndarray:
    """Deterministic unit vector seeded by the digest of the normalized text.

    Identical texts map to bitwise-identical vectors; distinct long texts
    land nearly orthogonal, as random directions on the sphere do. This is
    a stand-in for a semantic model, not a semantic model.
    """
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    seed_bytes = hashlib.sha256(normalize_text(text).encode("utf-8")).digest()
    rng = np.random.Generator(np.random.PCG64(int.from_bytes(seed_bytes[:16], "little")))
    vec = rng.standard_normal(dim)
    vec /= np.linalg.norm(vec)
    return vec.astype(np.float32)


class EmbedCache:
    """Disk-persisted digest -> vector map with a single serialized writer."""

    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._write_lock = threading.Lock()

    def _path(self, digest: str) -> Path:
        return self.directory / digest[:2] / f"{digest}.npy"

    def get(self, digest: str) -> np.ndarray | None:
        path = self._path(digest)
        if not path.exists():
            return None
        return np.load(path)

    def put(self, digest: str, vector: np.ndarray) -> None:
        path = self._path(digest)
        with self._write_lock:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.parent / f"{digest}.tmp.npy"  # .npy so np.save won't rename
            np.save(tmp, vector)
            os.replace(tmp, path)

    def __len__(self) -> int:
        return sum(1 for _ in self.directory.glob("*/*.npy"))


class OfflineProvider:
    """Deterministic local provider; one vector per text, no network."""

    name = "offline"

    def __init__(self, dim: int = DEFAULT_DIM):
        self.dim = dim

    def embed_texts(self, texts: list[str], model_tag: str) -> list[np.ndarray]:
        return [offline_embed(t, self.dim) for t in texts]


class RemoteProvider:
    """Client for an embeddings endpoint taking {model, input} batches.

    Credentials come from an environment variable so they never land in
    config files. Connection errors and 429/5xx responses raise retryable
    transport errors; a structured error payload is surfaced as a
    non-retryable provider error with the offending text index if given.
    """

    name = "remote"

    def __init__(self, endpoint: str, api_key_env: str = "CITEREC_API_KEY",
                 timeout: float = 30.0, session=None):
        self.endpoint = endpoint
        self.api_key = os.environ.get(api_key_env, "")
        self.timeout = timeout
        if session is None:
            import requests

            session = requests.Session()
        self.session = session

    def embed_texts(self, texts: list[str], model_tag: str) -> list[np.ndarray]:
        import requests

        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        try:
            resp = self.session.post(
                self.endpoint,
                json={"model": model_tag, "input": texts},
                headers=headers,
                timeout=self.timeout,
            )
        except requests.RequestException as exc:
            raise ConnectionError(f"embedding endpoint unreachable: {exc}") from exc

        if resp.status_code == 429 or resp.status_code >= 500:
            raise ConnectionError(f"embedding endpoint returned {resp.status_code}")
        if resp.status_code != 200:
            payload = {}
            try:
                payload = resp.json()
            except ValueError:
                pass
            err = payload.get("error", {}) if isinstance(payload, dict) else {}
            raise EmbedProviderError(
                err.get("message", f"provider error {resp.status_code}"),
                text_index=err.get("index"),
            )

        data = resp.json().get("data", [])
        if len(data) != len(texts):
            raise EmbedProviderError(
                f"provider returned {len(data)} vectors for {len(texts)} texts"
            )
        ordered = sorted(data, key=lambda d: d.get("index", 0))
        return [np.asarray(d["embedding"], dtype=np.float32) for d in ordered]


class TokenBucket:
    """Simple pacing: ``rate`` tokens per second, bucket capacity ``burst``."""

    def __init__(self, rate: float, burst: int):
        self.rate = rate
        self.capacity = float(burst)
        self._tokens = float(burst)
        self._stamp = time.monotonic()
        self._lock = threading.Lock()

    def acquire(self) -> None:
        while True:
            with self._lock:
                now = time.monotonic()
                self._tokens = min(self.capacity, self._tokens + (now - self._stamp) * self.rate)
                self._stamp = now
                if self._tokens >= 1.0:
                    self._tokens -= 1.0
                    return
                wait = (1.0 - self._tokens) / self.rate
            time.sleep(wait)


@dataclass
class EmbeddingClient:
    """Cache-first batched embedding with bounded in-flight requests."""

    provider: object
    cache: EmbedCache | None = None
    model_tag: str = "text-embedding-3-small"
    dim: int = DEFAULT_DIM
    batch_size: int = 64
    max_in_flight: int = 4
    retries: int = 3
    backoff_base: float = 0.5
    bucket: TokenBucket | None = None
    _sleep: object = field(default=time.sleep, repr=False)

    def _call_provider(self, texts: list[str]) -> list[np.ndarray]:
        attempt = 0
        while True:
            if self.bucket is not None:
                self.bucket.acquire()
            try:
                return self.provider.embed_texts(texts, self.model_tag)
            except ConnectionError as exc:
                attempt += 1
                if attempt > self.retries:
                    raise EmbedTransportError(
                        f"embedding failed after {self.retries} retries: {exc}"
                    ) from exc
                delay = self.backoff_base * (2 ** (attempt - 1))
                log.warning("embedding attempt %d failed (%s); retrying in %.1fs",
                            attempt, exc, delay)
                self._sleep(delay)

    def embed_texts(self, texts: list[str]) -> list[np.ndarray]:
        """One vector per input text; cache consulted first, misses batched."""
        EmbedRequest(texts=list(texts), model_tag=self.model_tag)  # validate

        digests = [text_digest(self.model_tag, t) for t in texts]
        results: dict[str, np.ndarray] = {}
        if self.cache is not None:
            for d in set(digests):
                hit = self.cache.get(d)
                if hit is not None:
                    results[d] = hit

        miss_digests: list[str] = []
        miss_texts: list[str] = []
        seen: set[str] = set()
        for t, d in zip(texts, digests):
            if d not in results and d not in seen:
                seen.add(d)
                miss_digests.append(d)
                miss_texts.append(t)

        if miss_texts:
            batches = [
                (miss_texts[i:i + self.batch_size], miss_digests[i:i + self.batch_size])
                for i in range(0, len(miss_texts), self.batch_size)
            ]

            def run(batch):
                batch_texts, batch_digests = batch
                vectors = self._call_provider(batch_texts)
                return batch_digests, vectors

            if len(batches) == 1 or self.max_in_flight <= 1:
                finished = map(run, batches)
            else:
                with ThreadPoolExecutor(max_workers=self.max_in_flight) as pool:
                    finished = list(pool.map(run, batches))

            for batch_digests, vectors in finished:
                for d, vec in zip(batch_digests, vectors):
                    if vec.shape != (self.dim,):
                        raise DimensionMismatchError(
                            f"provider returned dimension {vec.shape[0]}, expected {self.dim}"
                        )
                    if self.cache is not None:
                        self.cache.put(d, vec)
                    results[d] = vec

        return [results[d] for d in digests]

    def embed_batch(self, req: EmbedRequest) -> list[np.ndarray]:
        if req.model_tag != self.model_tag:
            raise ValueError(f"request model {req.model_tag!r} != client model {self.model_tag!r}")
        return self.embed_texts(req.texts)

    def embed_corpus(self, corpus: Corpus) -> EmbeddingStore:
        """Embed every article abstract present in the corpus into a store."""
        store = EmbeddingStore(self.model_tag, self.dim)
        with_abstract = [a for a in corpus if a.has_abstract()]
        if not with_abstract:
            return store
        vectors = self.embed_texts([a.abstract for a in with_abstract])
        for art, vec in zip(with_abstract, vectors):
            store.add(art.id, vec)
        return store


def embed_batch(req: EmbedRequest, provider, cache: EmbedCache | None = None,
                dim: int = DEFAULT_DIM, **options) -> list[np.ndarray]:
    """Convenience wrapper: run one request through a throwaway client."""
    client = EmbeddingClient(provider=provider, cache=cache,
                             model_tag=req.model_tag, dim=dim, **options)
    return client.embed_batch(req)
