import json

import pytest

from termex.errors import SynthSpecError
from termex.synthfix import (
    FamilySpec, SynthSpec, default_spec, generate, gold_lines, load_manifest, recovery, render,
    seed_entries, write_corpus, write_manifest,
)


def test_single_family_no_noise_carries_suffix():
    spec = SynthSpec((FamilySpec("CAUSE", "genic", size=10, context=0),), sentences=100, noise_rate=0.0)
    corpus, manifest = generate(spec)
    words = [t for s in corpus.iter_sentences() for t in s if t != "."]
    assert words and all(w.endswith("genic") for w in words)


def test_non_context_tokens_carry_suffix():
    spec = SynthSpec((FamilySpec("CAUSE", "genic", size=10, context=50),), sentences=100, noise_rate=0.0)
    corpus, manifest = generate(spec)
    context = {a for assoc in manifest.families[0]["context"].values() for a in assoc}
    words = [t for s in corpus.iter_sentences() for t in s if t != "." and t not in context]
    assert words and all(w.endswith("genic") for w in words)


def test_byte_identical_runs(tmp_path):
    for d in ("a", "b"):
        corpus, manifest = generate(default_spec(7, 300))
        write_corpus(corpus, tmp_path / d)
        write_manifest(manifest, tmp_path / d / "m.json")
    for name in ("synth.txt", "m.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_manifest_sizes_and_disjointness():
    spec = SynthSpec((FamilySpec("CAUSE", "genic", 20), FamilySpec("FORM", "oidal", 15),
                      FamilySpec("COMPOSITION", "aceous", 7)), sentences=50)
    _, manifest = generate(spec)
    assert [len(f["members"]) for f in manifest.families] == [20, 15, 7]
    allwords = [w for f in manifest.families for w in f["members"]]
    assert len(set(allwords)) == len(allwords)
    assert not set(allwords) & set(manifest.noise)
    assert all(w.endswith(f["suffix"]) for f in manifest.families for w in f["members"])


@pytest.mark.parametrize("kwargs", [
    {"families": ()},
    {"families": (FamilySpec("A", "ic"),), "noise_rate": 1.0},
    {"families": (FamilySpec("A", "ic"), FamilySpec("B", "genic"))},
])
def test_invalid_specs(kwargs):
    with pytest.raises(SynthSpecError):
        SynthSpec(**kwargs).validate()


def test_spec_dict_roundtrip():
    spec = default_spec()
    assert SynthSpec.from_dict(json.loads(json.dumps(spec.as_dict()))) == spec
    with pytest.raises(SynthSpecError):
        SynthSpec.from_dict({"sentences": 3})


def test_helpers(tmp_path):
    _, manifest = generate(default_spec(3, 20))
    write_manifest(manifest, tmp_path / "m.json")
    m2 = load_manifest(tmp_path / "m.json")
    assert m2.as_dict() == manifest.as_dict()
    seeds = seed_entries(manifest, 5)
    assert [len(e["seeds"]) for e in seeds] == [5, 5, 5]
    rows = gold_lines(manifest, "CAUSE")
    assert sum(r.endswith("\tCORRECT") for r in rows) == 20 and len(rows) == 60
    fam = manifest.members("CAUSE")
    assert recovery(fam[5:], manifest, "CAUSE", fam[:5]) == (1.0, 1.0)
    assert recovery([], manifest, "CAUSE", fam[:5]) == (0.0, 0.0)


def test_render():
    assert render([["abc", "def"], []]) == "Abc def.\n"
