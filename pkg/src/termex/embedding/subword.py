"""Character n-grams and their hash buckets."""
from __future__ import annotations

from functools import lru_cache

FNV_OFFSET_32 = 0x811C9DC5
FNV_PRIME_32 = 0x01000193


def fnv1a_32(data: bytes) -> int:
    h = FNV_OFFSET_32
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME_32) & 0xFFFFFFFF
    return h


def subword_ngrams(word: str, ngram_min: int, ngram_max: int) -> list[str]:
    """Contiguous n-grams of ``<word>``, ordered by (start, length).

    The wrapped word itself is never returned, so a word whose only
    candidate n-gram is its wrapped form yields an empty list.

    >>> subword_ngrams("cave", 3, 3)
    ['<ca', 'cav', 'ave', 've>']
    """
    wrapped = f"<{word}>"
    size = len(wrapped)
    out = []
    for start in range(size):
        for n in range(ngram_min, ngram_max + 1):
            if start + n > size:
                break
            if n == size:
                continue
            out.append(wrapped[start:start + n])
    return out


@lru_cache(maxsize=1 << 16)
def _bucket(ngram: str, buckets: int) -> int:
    return fnv1a_32(ngram.encode("utf-8")) % buckets


def ngram_buckets(word: str, ngram_min: int, ngram_max: int, buckets: int) -> list[int]:
    return [_bucket(g, buckets) for g in subword_ngrams(word, ngram_min, ngram_max)]
