"""Exact cosine nearest-neighbour search over unit-normalized vectors."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .embedding.model import EmbeddingModel
from .errors import IndexBuildError, UnknownWordError

log = logging.getLogger(__name__)

TIE_DECIMALS = 12


@dataclass(frozen=True)
class NeighborSet:
    query: str
    k: int
    neighbors: tuple[tuple[str, float], ...]

    @property
    def words(self) -> list[str]:
        return [w for w, _ in self.neighbors]

    def __contains__(self, word):
        return any(w == word for w, _ in self.neighbors)

    def __len__(self):
        return len(self.neighbors)


@dataclass
class VectorIndex:
    words: list[str]
    unit_vectors: np.ndarray
    skipped: list[str] = field(default_factory=list)
    _row: dict[str, int] = field(init=False, repr=False)
    _order: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self._row = {w: i for i, w in enumerate(self.words)}
        # rank of each word in lexicographic order, used for tie-breaking
        order = np.empty(len(self.words), dtype=np.int64)
        order[np.argsort(np.array(self.words, dtype=object), kind="stable")] = np.arange(len(self.words))
        self._order = order

    @property
    def dim(self) -> int:
        return self.unit_vectors.shape[1]

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self._row

    def row(self, word: str) -> int:
        try:
            return self._row[word]
        except KeyError:
            raise UnknownWordError(word) from None

    def vector(self, word: str) -> np.ndarray:
        return self.unit_vectors[self.row(word)]

    def cosine(self, w1: str, w2: str) -> float:
        return cosine(self, w1, w2)

    def nearest(self, word: str, k: int = 100) -> NeighborSet:
        return nearest(self, word, k)


def build_index(source: EmbeddingModel | Mapping[str, Sequence[float]] | tuple) -> VectorIndex:
    """Normalize vectors into an index; zero vectors are left out.

    ``source`` is a model, a ``word -> vector`` mapping, or a
    ``(words, matrix)`` pair. Repeated words keep their first vector.
    """
    if isinstance(source, EmbeddingModel):
        words = list(source.vocabulary.words)
        matrix = source.vectors()
    elif isinstance(source, Mapping):
        words = list(source.keys())
        matrix = np.array([np.asarray(source[w], dtype=np.float64) for w in words])
    else:
        words, matrix = source
        words = list(words)
        matrix = np.asarray(matrix, dtype=np.float64)
    if len(words) != len(matrix):
        raise IndexBuildError("word list and vector matrix differ in length")

    keep_words, keep_rows, skipped, seen = [], [], [], set()
    norms = np.linalg.norm(matrix, axis=1) if len(matrix) else np.zeros(0)
    for i, w in enumerate(words):
        if w in seen:
            continue
        seen.add(w)
        if not norms[i] > 0 or not np.isfinite(norms[i]):
            skipped.append(w)
            continue
        keep_words.append(w)
        keep_rows.append(i)
    if not keep_words:
        raise IndexBuildError("no non-zero vectors to index")
    if skipped:
        log.info("skipped %d zero vectors", len(skipped))
    unit = matrix[keep_rows] / norms[keep_rows, None]
    return VectorIndex(keep_words, unit, skipped)


def cosine(index: VectorIndex, w1: str, w2: str) -> float:
    a = index.vector(w1)
    b = index.vector(w2)
    return float(min(1.0, max(-1.0, a @ b)))


def nearest(index: VectorIndex, word: str, k: int = 100) -> NeighborSet:
    """The ``k`` most cosine-similar words to ``word``, excluding itself.

    Ordered by similarity descending, ties broken by word. Similarities
    are rounded to ``TIE_DECIMALS`` places first, so rounding noise from
    the dot-product kernel cannot reorder mathematically tied words.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    q = index.row(word)
    if k == 0:
        return NeighborSet(word, k, ())
    sims = np.round(index.unit_vectors @ index.unit_vectors[q], TIE_DECIMALS)
    sims[q] = -np.inf
    n_other = len(index) - 1
    take = min(k, n_other)
    if take <= 0:
        return NeighborSet(word, k, ())
    if take < n_other:
        # everything tied with the k-th value must be ranked before cutting
        pos = len(sims) - take
        kth = np.partition(sims, pos)[pos]
        cand = np.flatnonzero(sims >= kth)
    else:
        cand = np.flatnonzero(np.isfinite(sims))
    order = np.lexsort((index._order[cand], -sims[cand]))[:take]
    rows = cand[order]
    return NeighborSet(word, k, tuple((index.words[r], float(min(1.0, sims[r]))) for r in rows))
