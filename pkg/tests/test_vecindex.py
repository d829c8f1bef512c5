import numpy as np
import pytest
from hypothesis import given, strategies as st

from termex.errors import IndexBuildError, UnknownWordError
from termex.vecindex import build_index, cosine, nearest

from oracles import brute_force_neighbors


def test_three_vectors():
    ix = build_index({"a": [1, 0], "b": [0, 2], "c": [3, 4]})
    assert len(ix) == 3 and np.allclose(np.linalg.norm(ix.unit_vectors, axis=1), 1)


def test_zero_vector_skipped():
    ix = build_index({"a": [1, 0], "b": [0, 0], "c": [1, 1], "d": [0, 1], "e": [2, 1]})
    assert len(ix) == 4 and ix.skipped == ["b"]
    assert "b" not in ix


def test_all_zero_is_error():
    with pytest.raises(IndexBuildError):
        build_index({"a": [0, 0]})


def test_random_rows_unit_norm(rng):
    ix = build_index(([f"w{i}" for i in range(1000)], rng.normal(size=(1000, 50))))
    assert np.abs(np.linalg.norm(ix.unit_vectors, axis=1) - 1).max() <= 1e-6


def test_hand_cosines():
    ix = build_index({"x": [1, 0], "y": [0, 1], "d": [1, 1]})
    assert cosine(ix, "x", "x") == pytest.approx(1.0, abs=1e-6)
    assert cosine(ix, "x", "y") == 0.0
    assert cosine(ix, "d", "x") == pytest.approx(0.7071, abs=1e-4)


def test_unknown_word_named():
    ix = build_index({"a": [1, 0], "b": [0, 1]})
    with pytest.raises(UnknownWordError, match="zzz"):
        cosine(ix, "a", "zzz")
    with pytest.raises(KeyError):
        nearest(ix, "zzz", 1)


def test_k_zero_and_k_too_large():
    ix = build_index({"a": [1, 0], "b": [0, 1], "c": [1, 1]})
    assert len(nearest(ix, "a", 0)) == 0
    assert nearest(ix, "a", 10).words == ["c", "b"]


def test_four_word_full_ranking():
    words = ["n", "e", "s", "w"]
    m = np.array([[0, 1], [1, 0.2], [0.1, -1], [-1, 0.5]], float)
    ix = build_index((words, m))
    for q in words:
        assert nearest(ix, q, 3).words == brute_force_neighbors(words, m, q, 3)


def test_duplicate_vector_ranks_first():
    ix = build_index({"a": [0.3, 0.4, 0.5], "b": [1, 0, 0], "twin": [0.3, 0.4, 0.5]})
    top = nearest(ix, "a", 1).neighbors[0]
    assert top[0] == "twin" and top[1] == pytest.approx(1.0)


def test_ties_are_lexicographic():
    ix = build_index({"q": [1, 0], "zeta": [0, 1], "alpha": [0, 1], "mid": [0, 1], "far": [-1, 0]})
    assert nearest(ix, "q", 2).words == ["alpha", "mid"]
    assert nearest(ix, "q", 4).words == ["alpha", "mid", "zeta", "far"]


def test_oracle_equivalence_with_ties(rng):
    # coarse integer vectors produce many exact ties
    m = rng.integers(-2, 3, size=(300, 4)).astype(float)
    m[np.abs(m).sum(axis=1) == 0, 0] = 1
    words = [f"w{i:03d}" for i in range(300)]
    ix = build_index((words, m))
    for q in rng.choice(words, 20, replace=False):
        assert nearest(ix, q, 25).words == brute_force_neighbors(words, m, q, 25)


@given(st.integers(0, 2**32 - 1), st.integers(0, 40))
def test_prefix_monotonicity(seed, k):
    r = np.random.default_rng(seed)
    ix = build_index(([f"w{i}" for i in range(40)], r.normal(size=(40, 5))))
    a = nearest(ix, "w0", k)
    b = nearest(ix, "w0", k + 1)
    assert b.words[:len(a)] == a.words
    sims = [c for _, c in b.neighbors]
    assert all(x >= y for x, y in zip(sims, sims[1:]))
    assert "w0" not in b.words


def test_cosine_symmetry(rng):
    words = [f"w{i}" for i in range(30)]
    ix = build_index((words, rng.normal(size=(30, 8))))
    for a in words:
        for b in words:
            assert abs(cosine(ix, a, b) - cosine(ix, b, a)) <= 1e-9
