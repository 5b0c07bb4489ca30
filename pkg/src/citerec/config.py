"""Engine configuration: dataset paths, weights, provider, and service settings.

Configuration lives in a flat JSON file; unknown keys are rejected so a
typo never silently falls back to a default. Weights may be given as a
preset name or as ten values w1..w10.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path

from .recommend import WeightConfig, resolve_weights


@dataclass
class EngineConfig:
    articles_path: str | None = None
    edges_path: str | None = None
    embeddings_path: str | None = None
    cache_dir: str | None = None

    weights: WeightConfig = field(default_factory=WeightConfig)

    model_tag: str = "text-embedding-3-small"
    dim: int = 1536
    endpoint: str | None = None
    api_key_env: str = "CITEREC_API_KEY"
    batch_size: int = 64
    max_in_flight: int = 4
    retries: int = 3

    host: str = "127.0.0.1"
    port: int = 8571
    cors_origins: list[str] = field(default_factory=lambda: ["*"])

    top_k: int = 10
    period_len: int = 5

    @classmethod
    def from_dict(cls, raw: dict) -> "EngineConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        data = dict(raw)
        if "weights" in data:
            data["weights"] = resolve_weights(data["weights"])
        return cls(**data)

    @classmethod
    def from_file(cls, path: str | Path) -> "EngineConfig":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValueError(f"{path}: config must be a JSON object")
        return cls.from_dict(raw)

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, WeightConfig):
                value = value.to_flat()
            out[f.name] = value
        return out
