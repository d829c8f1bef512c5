"""Shipped reference data: karst-domain seed lists, extracted-word lists
with their hand-made groupings, a karst-term lexicon, and a precision table."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .corpus import Language
from .expansion import Relation, RelationSpec, load_seed_file


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("termex") / "fixtures" / name))


def seed_specs() -> list[RelationSpec]:
    """All ten (relation, language) seed lists."""
    return load_seed_file(fixture_path("seeds_termframe.json"))


@lru_cache(maxsize=None)
def _lists() -> tuple:
    return tuple(json.loads(fixture_path("extracted_lists.json").read_text(encoding="utf-8")))


def extracted_entry(relation, language) -> dict:
    relation = Relation.parse(relation)
    language = Language.parse(language)
    for e in _lists():
        if e["relation"] == relation.value and e["language"] == language.value:
            return e
    raise KeyError((relation, language))


def extracted_words(relation, language) -> list[str]:
    """Every listed word for one relation and language, first occurrence order, deduplicated."""
    words = [w for grp in extracted_entry(relation, language)["groups"] for w in grp["words"]]
    return list(dict.fromkeys(words))


def karst_terms() -> list[str]:
    lines = fixture_path("karst_terms.txt").read_text(encoding="utf-8").splitlines()
    return [w.strip() for w in lines if w.strip() and not w.startswith("#")]


def reference_scores() -> list[dict]:
    """Reference (N, C, P) triples in table column order."""
    return json.loads(fixture_path("reference_scores.json").read_text(encoding="utf-8"))
