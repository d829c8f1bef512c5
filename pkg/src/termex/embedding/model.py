from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields, replace

import numpy as np

from ..errors import ConfigError
from .subword import ngram_buckets
from .vocab import Vocabulary


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for subword skip-gram training.

    ``workers=0`` selects the deterministic single-worker trainer; larger
    values run that many threads with unsynchronized (lossy) updates.
    """

    dim: int = 100
    window: int = 5
    epochs: int = 5
    negatives: int = 5
    min_count: int = 5
    ngram_min: int = 3
    ngram_max: int = 6
    buckets: int = 2_000_000
    learning_rate: float = 0.05
    subsample_t: float = 1e-4
    rng_seed: int = 42
    workers: int = 0

    def validate(self) -> "TrainConfig":
        problems = []
        if self.dim < 1:
            problems.append("dim must be >= 1")
        if self.window < 1:
            problems.append("window must be >= 1")
        if self.epochs < 0:
            problems.append("epochs must be >= 0")
        if self.negatives < 0:
            problems.append("negatives must be >= 0")
        if self.min_count < 1:
            problems.append("min_count must be >= 1")
        if self.ngram_min < 1 or self.ngram_min > self.ngram_max:
            problems.append("need 1 <= ngram_min <= ngram_max")
        if self.buckets < 1:
            problems.append("buckets must be >= 1")
        if not self.learning_rate > 0:
            problems.append("learning_rate must be > 0")
        if self.subsample_t < 0:
            problems.append("subsample_t must be >= 0")
        if self.workers < 0:
            problems.append("workers must be >= 0")
        if problems:
            raise ConfigError("invalid training config: " + "; ".join(problems))
        return self

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "TrainConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown training options: {', '.join(sorted(unknown))}")
        return cls(**data)

    def updated(self, **changes) -> "TrainConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


@dataclass
class EmbeddingModel:
    """Word, subword-bucket and output vectors.

    Models loaded from a plain vector file are query-only: ``word_input``
    holds the final word vectors and ``subword`` / ``output`` are ``None``.
    """

    config: TrainConfig
    vocabulary: Vocabulary
    word_input: np.ndarray
    subword: np.ndarray | None = None
    output: np.ndarray | None = None
    _ngram_cache: dict = field(default_factory=dict, init=False, repr=False)

    @property
    def dim(self) -> int:
        return self.word_input.shape[1]

    @property
    def query_only(self) -> bool:
        return self.subword is None

    def bucket_ids(self, word: str) -> list[int]:
        if self.subword is None:
            return []
        ids = self._ngram_cache.get(word)
        if ids is None:
            c = self.config
            ids = ngram_buckets(word, c.ngram_min, c.ngram_max, c.buckets)
            self._ngram_cache[word] = ids
        return ids

    def word_vector(self, word: str) -> np.ndarray:
        return word_vector(self, word)

    def vectors(self) -> np.ndarray:
        """Composed vectors of every vocabulary word, in id order."""
        if self.subword is None:
            return np.asarray(self.word_input, dtype=np.float64).copy()
        return np.stack([self.word_vector(w) for w in self.vocabulary.words]) if len(self.vocabulary) else np.zeros((0, self.dim))


def word_vector(model: EmbeddingModel, word: str) -> np.ndarray:
    """Vector for ``word`` composed from its word and subword parts.

    In-vocabulary: mean of the word row and its bucket rows. Out of
    vocabulary: mean of the bucket rows alone, or zeros when there are none.
    """
    if not word:
        raise ValueError("word must be non-empty")
    ids = model.bucket_ids(word)
    idx = model.vocabulary.index.get(word)
    if idx is not None:
        total = model.word_input[idx].astype(np.float64)
        if ids:
            total = total + model.subword[ids].astype(np.float64).sum(axis=0)
        return total / (1 + len(ids))
    if not ids:
        return np.zeros(model.dim)
    return model.subword[ids].astype(np.float64).sum(axis=0) / len(ids)
