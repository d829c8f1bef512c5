import json
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from termex.errors import ExpansionError, TermexError
from termex.expansion import (
    Candidate, CandidateSet, Relation, RelationSpec, expand, expand_from_neighbors, find_spec,
    intersect, load_seed_file, support_count,
)
from termex.vecindex import NeighborSet, build_index

from oracles import enumerate_subsets, random_expansion_fixture


def nsets(d):
    return {s: NeighborSet(s, 100, tuple((w, 0.5) for w in ws)) for s, ws in d.items()}


def spec(*seeds):
    return RelationSpec(Relation.CAUSE, "en", seeds)


def test_intersect_basic():
    assert intersect([{"x", "y"}, {"x", "z"}]) == {"x"}
    assert intersect([{"x", "y"}, {"x", "y"}]) == {"x", "y"}
    with pytest.raises(ValueError):
        intersect([{"x"}])


def test_intersect_oracle(rng):
    alphabet = [f"a{i}" for i in range(200)]
    sets = [set(rng.choice(alphabet, 50, replace=False)) for _ in range(3)]
    assert intersect(sets) == {w for w in alphabet if all(w in s for s in sets)}


def test_three_seed_example():
    cs = expand_from_neighbors(spec("a", "b", "c"), nsets({"a": ["x", "y"], "b": ["x", "z"], "c": ["x"]}), k=2)
    assert cs.words == ["x"]
    assert cs.candidates[0].supporting_seeds == {"a", "b", "c"}
    oracle = enumerate_subsets({"a": ["x", "y"], "b": ["x", "z"], "c": ["x"]}, ["a", "b", "c"], 2, 3)
    assert oracle == {"x": {"a", "b", "c"}}


def test_identical_sets_minus_seeds():
    same = ["a", "p", "q"]
    cs = expand_from_neighbors(spec("a", "b"), nsets({"a": ["b", "p", "q"], "b": same}), k=3)
    assert set(cs.words) == {"p", "q"}
    assert all(c.supporting_seeds == {"a", "b"} for c in cs)


def test_two_seeds_equal_intersection():
    d = {"s1": ["x", "y", "s2"], "s2": ["y", "z", "s1"]}
    cs = expand_from_neighbors(spec("s1", "s2"), nsets(d), k=3)
    assert set(cs.words) == intersect([d["s1"], d["s2"]]) - {"s1", "s2"}


def test_support_count_values():
    assert support_count(2) == 1
    assert support_count(4) == 11
    assert support_count(12) == sum(comb(12, s) for s in range(2, 11))
    c = Candidate("w", frozenset("abcd"), 4, 0.9)
    assert support_count(c) == 11


def test_ranking_convention():
    d = {"a": [("x", 0.5), ("y", 0.9), ("z", 0.7)], "b": [("x", 0.4), ("y", 0.3), ("z", 0.7)], "c": [("x", 0.1)]}
    ns = {s: NeighborSet(s, 3, tuple(v)) for s, v in d.items()}
    cs = expand_from_neighbors(spec("a", "b", "c"), ns, k=3)
    assert cs.words == ["x", "y", "z"]
    assert cs.candidates[0].max_subset_size == 3 and cs.candidates[1].best_cosine == 0.9


def test_spec_invariants():
    assert spec("a", "a", "b").seeds == ("a", "b")
    with pytest.raises(ExpansionError):
        spec("a", "a")
    with pytest.raises(TermexError):
        RelationSpec("taste", "en", ("a", "b"))


def test_expand_reports_missing_seeds():
    ix = build_index({"a": [1, 0], "b": [0.9, 0.1], "x": [1, 0.05], "y": [0, 1]})
    cs = expand(spec("a", "b", "ghost"), ix, k=2)
    assert cs.missing_seeds == ("ghost",)
    assert "x" in cs
    with pytest.raises(ExpansionError) as exc:
        expand(spec("a", "ghost", "phantom"), ix, k=2)
    assert exc.value.missing == ["ghost", "phantom"]


def test_oracle_equivalence(rng):
    for _ in range(25):
        seeds, neigh, k = random_expansion_fixture(rng)
        cs = expand_from_neighbors(spec(*seeds), nsets(neigh), k)
        oracle = enumerate_subsets(neigh, seeds)
        assert {c.word: set(c.supporting_seeds) for c in cs} == oracle


@given(st.integers(0, 2**32 - 1))
def test_candidate_invariants(seed):
    r = np.random.default_rng(seed)
    seeds, neigh, k = random_expansion_fixture(r, vocab_size=25)
    cs = expand_from_neighbors(spec(*seeds), nsets(neigh), k)
    assert len(set(cs.words)) == len(cs)
    for c in cs:
        assert c.word not in seeds
        assert sum(c.word in neigh[s] for s in seeds) >= 2
        assert c.max_subset_size == min(c.support, 10)
        # downward closure: every 2-subset of the supporting seeds also yields it
        sup = sorted(c.supporting_seeds)
        for i in range(len(sup)):
            for j in range(i + 1, len(sup)):
                assert c.word in intersect([neigh[sup[i]], neigh[sup[j]]])
    again = expand_from_neighbors(spec(*seeds), nsets(neigh), k)
    assert again == cs


def test_candidate_set_json_roundtrip():
    cs = expand_from_neighbors(spec("a", "b"), nsets({"a": ["x", "y"], "b": ["x", "y"]}), k=2, missing=("m",))
    assert CandidateSet.from_dict(json.loads(json.dumps(cs.as_dict()))) == cs
    assert cs.as_dict()["candidates"][0]["support_count"] == 1


def test_seed_file(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps([{"relation": "form", "language": "hr", "seeds": ["strm", "kružan"]}]), encoding="utf-8")
    specs = load_seed_file(p)
    assert find_spec(specs, "FORM", "HR").seeds == ("strm", "kružan")
    with pytest.raises(TermexError):
        find_spec(specs, "cause", "hr")
    p.write_text("{}", encoding="utf-8")
    with pytest.raises(TermexError):
        load_seed_file(p)
