"""Seed-set expansion by intersecting cosine-neighbour sets.

A word is extracted for a relation when it lies in the neighbour sets of at
least ``subset_min`` seeds.  That is the same as taking, for every subset of
seeds with size in ``[subset_min, subset_max]``, the intersection of their
neighbour sets and unioning the results; the direct form avoids enumerating
an exponential number of subsets.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from math import comb
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import Language
from .errors import ExpansionError, TermexError
from .vecindex import NeighborSet, VectorIndex, nearest


class Relation(str, Enum):
    LOCATION = "LOCATION"
    CAUSE = "CAUSE"
    FORM = "FORM"
    COMPOSITION = "COMPOSITION"
    FUNCTION = "FUNCTION"

    @classmethod
    def parse(cls, value: "str | Relation") -> "Relation":
        if isinstance(value, Relation):
            return value
        try:
            return cls(str(value).strip().upper())
        except ValueError:
            names = ", ".join(r.value.lower() for r in cls)
            raise TermexError(f"unknown relation {value!r} (expected one of {names})") from None


@dataclass(frozen=True)
class RelationSpec:
    relation: Relation
    language: Language
    seeds: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "relation", Relation.parse(self.relation))
        object.__setattr__(self, "language", Language.parse(self.language))
        seeds = tuple(dict.fromkeys(s for s in self.seeds if s))
        if len(seeds) < 2:
            raise ExpansionError(
                f"{self.relation.value}/{self.language.value}: expansion needs at least 2 distinct seeds, got {len(seeds)}"
            )
        object.__setattr__(self, "seeds", seeds)

    def as_dict(self) -> dict:
        return {"relation": self.relation.value, "language": self.language.value, "seeds": list(self.seeds)}


@dataclass(frozen=True)
class Candidate:
    word: str
    supporting_seeds: frozenset[str]
    max_subset_size: int
    best_cosine: float

    @property
    def support(self) -> int:
        return len(self.supporting_seeds)

    def as_dict(self, subset_min: int = 2, subset_max: int = 10) -> dict:
        return {
            "word": self.word,
            "supporting_seeds": sorted(self.supporting_seeds),
            "max_subset_size": self.max_subset_size,
            "best_cosine": round(self.best_cosine, 6),
            "support_count": support_count(self, subset_min, subset_max),
        }


@dataclass(frozen=True)
class CandidateSet:
    spec: RelationSpec
    k: int
    subset_min: int
    subset_max: int
    candidates: tuple[Candidate, ...]
    missing_seeds: tuple[str, ...] = ()

    @property
    def words(self) -> list[str]:
        return [c.word for c in self.candidates]

    def __len__(self):
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)

    def __contains__(self, word):
        return any(c.word == word for c in self.candidates)

    def as_dict(self) -> dict:
        return {
            "relation": self.spec.relation.value,
            "language": self.spec.language.value,
            "seeds": list(self.spec.seeds),
            "missing_seeds": list(self.missing_seeds),
            "k": self.k,
            "subset_min": self.subset_min,
            "subset_max": self.subset_max,
            "candidates": [c.as_dict(self.subset_min, self.subset_max) for c in self.candidates],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CandidateSet":
        spec = RelationSpec(data["relation"], data["language"], tuple(data["seeds"]))
        cands = tuple(
            Candidate(c["word"], frozenset(c["supporting_seeds"]), int(c["max_subset_size"]), float(c["best_cosine"]))
            for c in data["candidates"]
        )
        return cls(spec, int(data["k"]), int(data["subset_min"]), int(data["subset_max"]),
                   cands, tuple(data.get("missing_seeds", ())))


def intersect(sets: Sequence[NeighborSet | Iterable[str]]) -> set[str]:
    """Words present in every one of at least two neighbour sets."""
    if len(sets) < 2:
        raise ValueError("intersect needs at least 2 sets")
    members = [set(s.words) if isinstance(s, NeighborSet) else set(s) for s in sets]
    out = members[0]
    for m in members[1:]:
        out = out & m
    return out


def support_count(candidate: Candidate | int, subset_min: int = 2, subset_max: int = 10) -> int:
    """Number of distinct seed subsets whose intersection yields the candidate."""
    t = candidate if isinstance(candidate, int) else candidate.support
    return sum(comb(t, s) for s in range(subset_min, min(subset_max, t) + 1))


def expand_from_neighbors(
    spec: RelationSpec,
    neighbor_sets: Mapping[str, NeighborSet],
    k: int,
    subset_min: int = 2,
    subset_max: int = 10,
    missing: Sequence[str] = (),
) -> CandidateSet:
    """Expansion given precomputed neighbour sets for the resolvable seeds."""
    if subset_min < 1 or subset_max < subset_min:
        raise ValueError("need 1 <= subset_min <= subset_max")
    seeds = [s for s in spec.seeds if s in neighbor_sets]
    seed_set = set(spec.seeds)
    support: dict[str, set[str]] = {}
    best: dict[str, float] = {}
    for seed in seeds:
        for word, cos in neighbor_sets[seed].neighbors:
            if word in seed_set:
                continue
            support.setdefault(word, set()).add(seed)
            if cos > best.get(word, float("-inf")):
                best[word] = cos
    cands = [
        Candidate(w, frozenset(t), min(len(t), subset_max), best[w])
        for w, t in support.items()
        if len(t) >= subset_min
    ]
    cands.sort(key=lambda c: (-c.support, -c.best_cosine, c.word))
    return CandidateSet(spec, k, subset_min, subset_max, tuple(cands), tuple(missing))


def expand(
    spec: RelationSpec,
    index: VectorIndex,
    k: int = 100,
    subset_min: int = 2,
    subset_max: int = 10,
) -> CandidateSet:
    """Expand the seeds of one relation against a vector index."""
    missing = [s for s in spec.seeds if s not in index]
    present = [s for s in spec.seeds if s in index]
    if len(present) < max(2, subset_min):
        raise ExpansionError(
            f"{spec.relation.value}/{spec.language.value}: only {len(present)} seed(s) found in the vectors; "
            f"missing: {', '.join(missing) or '-'}",
            missing,
        )
    neighbor_sets = {s: nearest(index, s, k) for s in present}
    return expand_from_neighbors(spec, neighbor_sets, k, subset_min, subset_max, missing)


def load_seed_file(path: str | Path) -> list[RelationSpec]:
    """Read a JSON array of ``{relation, language, seeds}`` objects."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise TermexError(f"cannot read seed file {path}: {exc}") from exc
    if not isinstance(data, list):
        raise TermexError(f"{path}: seed file must hold a JSON array")
    specs = []
    for i, entry in enumerate(data):
        try:
            specs.append(RelationSpec(entry["relation"], entry["language"], tuple(entry["seeds"])))
        except (KeyError, TypeError) as exc:
            raise TermexError(f"{path}: entry {i} is malformed ({exc})") from exc
    return specs


def find_spec(specs: Iterable[RelationSpec], relation, language) -> RelationSpec:
    relation = Relation.parse(relation)
    language = Language.parse(language)
    for s in specs:
        if s.relation == relation and s.language == language:
            return s
    raise TermexError(f"no seeds for {relation.value.lower()}/{language.value.lower()}")
