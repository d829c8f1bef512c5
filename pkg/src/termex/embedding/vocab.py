from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..corpus import Corpus


@dataclass
class Vocabulary:
    """Words kept after the frequency cut, densely indexed.

    Ids follow descending frequency, ties broken lexicographically.
    """

    words: list[str]
    counts: np.ndarray
    min_count: int = 1
    total_tokens: int = 0
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64)
        if len(self.counts) != len(self.words):
            raise ValueError("words and counts differ in length")
        self.index = {w: i for i, w in enumerate(self.words)}
        if len(self.index) != len(self.words):
            raise ValueError("duplicate words in vocabulary")

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self.index

    def __iter__(self):
        return iter(self.words)

    def id(self, word: str) -> int:
        return self.index[word]

    def frequency(self, word: str) -> int:
        return int(self.counts[self.index[word]])

    @property
    def entries(self) -> dict[str, tuple[int, int]]:
        return {w: (i, int(c)) for i, (w, c) in enumerate(zip(self.words, self.counts))}


def _sentences(source) -> Iterable[Sequence[str]]:
    if isinstance(source, Corpus):
        return source.iter_sentences()
    return source


def build_vocab(corpus: Corpus | Iterable[Sequence[str]], min_count: int = 5) -> Vocabulary:
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    freq: Counter[str] = Counter()
    for sent in _sentences(corpus):
        freq.update(sent)
    kept = sorted(((w, c) for w, c in freq.items() if c >= min_count), key=lambda wc: (-wc[1], wc[0]))
    words = [w for w, _ in kept]
    counts = np.array([c for _, c in kept], dtype=np.int64)
    return Vocabulary(words, counts, min_count=min_count, total_tokens=int(counts.sum()))
