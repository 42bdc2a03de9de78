"""Pipeline configuration: one JSON file drives every subcommand.

Defaults reproduce the reference settings: 300-dimensional vectors, a
10-word window, 10 neighbors per seed, and seed frequency thresholds of
100 then 1000 occurrences.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .embedding import EmbeddingConfig
from .lexicon import SeedConfig


@dataclass
class PipelineConfig:
    corpus: str = ""
    general_lexicon: str = ""
    wordnet_dir: str = ""
    work_dir: str = "work"
    min_count: int = 5
    embedding: EmbeddingConfig = field(default_factory=EmbeddingConfig)
    seeds: SeedConfig = field(default_factory=SeedConfig)
    k: int = 10
    kappa_weighting: str = "linear"
    sea_avg: Union[str, float] = "lexicon"
    t_test: str = "welch"
    extra_seeds: Optional[str] = None
    general_columns: Optional[dict[str, str]] = None
    shuffle_sheet: Optional[int] = None

    def validate(self) -> None:
        self.embedding.validate()
        if self.min_count < 1 or self.k < 0:
            raise ValueError("min_count must be >= 1 and k >= 0")
        for name in ("n1", "f1", "n2", "f2"):
            if getattr(self.seeds, name) < 1:
                raise ValueError(f"seed config {name} must be positive")
        if self.kappa_weighting not in ("linear", "quadratic"):
            raise ValueError(f"bad kappa_weighting: {self.kappa_weighting!r}")
        if self.t_test not in ("welch", "pooled"):
            raise ValueError(f"bad t_test: {self.t_test!r}")
        if isinstance(self.sea_avg, str) and self.sea_avg not in ("lexicon", "dataset"):
            raise ValueError(f"bad sea_avg: {self.sea_avg!r}")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        data = dict(data)
        embedding = EmbeddingConfig(**data.pop("embedding", {}))
        seeds = SeedConfig(**data.pop("seeds", {}))
        cfg = cls(embedding=embedding, seeds=seeds, **data)
        cfg.validate()
        return cfg

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: str | Path) -> "PipelineConfig":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def flat(self) -> dict[str, object]:
        """Dotted-key view used for per-stage config hashing."""
        out: dict[str, object] = {}
        for key, value in self.to_dict().items():
            if isinstance(value, dict) and key in ("embedding", "seeds"):
                for sub, subval in value.items():
                    out[f"{key}.{sub}"] = subval
            else:
                out[key] = value
        return out


def hash_config_slice(config: PipelineConfig, keys: list[str]) -> str:
    flat = config.flat()
    selected = {k: flat.get(k) for k in sorted(keys)}
    blob = json.dumps(selected, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]
