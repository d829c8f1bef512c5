"""Independent brute-force oracles shared by the unit and acceptance tests."""
from itertools import combinations

import numpy as np


def brute_force_neighbors(words, matrix, query, k):
    """Full sort of every other word by (cosine desc, word), cosines to 12 places."""
    unit = matrix / np.linalg.norm(matrix, axis=1, keepdims=True)
    q = words.index(query)
    scored = [(-round(float(unit[i] @ unit[q]), 12), w) for i, w in enumerate(words) if i != q]
    scored.sort()
    return [w for _, w in scored[:k]]


def enumerate_subsets(neighbor_words, seeds, subset_min=2, subset_max=10):
    """Union over every seed subset of the intersection of its neighbour sets.

    Returns word -> set of seeds that appear in some subset yielding it.
    """
    out = {}
    seeds = [s for s in seeds if s in neighbor_words]
    for size in range(subset_min, min(subset_max, len(seeds)) + 1):
        for subset in combinations(seeds, size):
            common = set(neighbor_words[subset[0]])
            for s in subset[1:]:
                common &= set(neighbor_words[s])
            for w in common - set(seeds):
                out.setdefault(w, set()).update(subset)
    return out


def random_expansion_fixture(rng, vocab_size=60):
    n_seeds = int(rng.integers(2, 9))
    k = int(rng.integers(1, 31))
    vocab = [f"w{i:03d}" for i in range(vocab_size)]
    seeds = list(rng.choice(vocab, n_seeds, replace=False))
    neigh = {}
    for s in seeds:
        pool = [w for w in vocab if w != s]
        neigh[s] = list(rng.choice(pool, min(k, len(pool)), replace=False))
    return seeds, neigh, k
