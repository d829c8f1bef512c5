import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from termex.corpus import Language
from termex.errors import TermexError
from termex.evaluation import (
    GoldAnnotation, RelationScore, Verdict, cross_relation_overlap, emit_report,
    load_gold, load_report, round_half_up_2, score,
)
from termex.expansion import Candidate, CandidateSet, Relation, RelationSpec
from termex.morphology import suffix_clusters


def cset(relation, words, lang="EN"):
    spec = RelationSpec(relation, lang, ("seed1", "seed2"))
    cands = tuple(Candidate(w, frozenset({"seed1", "seed2"}), 2, 0.5) for w in words)
    return CandidateSet(spec, 100, 2, 10, cands)


def gold(relation, correct, incorrect=(), lang="EN"):
    j = {w: Verdict.CORRECT for w in correct}
    j.update({w: Verdict.INCORRECT for w in incorrect})
    return GoldAnnotation(Language.parse(lang), Relation.parse(relation), j)


def half_up_oracle(c, n):
    # exact rational arithmetic, independent of the integer formula
    x = Fraction(100 * c, n) + Fraction(1, 2)
    return (x.numerator // x.denominator) / 100


@pytest.mark.parametrize("n,c,p", [(357, 118, 0.33), (152, 43, 0.28), (5, 5, 1.0)])
def test_score_examples(n, c, p):
    words = [f"w{i}" for i in range(n)]
    s = score(cset("location", words), gold("location", words[:c], words[c:]))
    assert (s.n_extracted, s.n_correct, s.precision) == (n, c, p)


def test_empty_candidates():
    s = score(cset("cause", []), gold("cause", ["x"]))
    assert s.n_extracted == 0 and s.precision is None and s.precision_text == "n/a"


def test_unjudged_counts_toward_n_only():
    s = score(cset("cause", ["a", "b", "c"]), gold("cause", ["a"]))
    assert (s.n_extracted, s.n_correct, s.n_unjudged) == (3, 1, 2)


@given(st.integers(1, 5000), st.data())
def test_rounding_matches_rational_oracle(n, data):
    c = data.draw(st.integers(0, n))
    p = round_half_up_2(c, n)
    assert p == half_up_oracle(c, n)
    assert 0 <= p <= 1
    assert round_half_up_2(n, n) == 1.0 and round_half_up_2(0, n) == 0.0


def test_half_boundary_rounds_up():
    assert round_half_up_2(1, 8) == 0.13  # 12.5 -> 13
    assert round_half_up_2(3, 8) == 0.38


@given(st.lists(st.sampled_from("abcdefghij"), unique=True, max_size=10), st.sampled_from("klmnop"))
def test_adding_correct_word_never_lowers_numerator(words, extra):
    g = gold("form", list(words[:3]) + [extra])
    before = score(words, g)
    after = score(list(words) + [extra], g)
    assert after.n_correct == before.n_correct + 1


def test_invalid_score():
    with pytest.raises(ValueError):
        RelationScore(Relation.CAUSE, Language.EN, 2, 3)


def test_load_gold_verdicts_and_labels(tmp_path):
    p = tmp_path / "g.tsv"
    p.write_text("# comment\n\nigneous\tCORRECT\nshale\tincorrect\nsinuous\tform\nmarine\tcause\n", encoding="utf-8")
    g = load_gold(p, "cause", "en")
    assert g.judgments == {"igneous": Verdict.CORRECT, "shale": Verdict.INCORRECT,
                           "sinuous": Verdict.INCORRECT, "marine": Verdict.CORRECT}


@pytest.mark.parametrize("text", ["word\n", "w\tmaybe\n", "w\tcorrect\nw\tincorrect\n"])
def test_bad_gold(tmp_path, text):
    p = tmp_path / "g.tsv"
    p.write_text(text, encoding="utf-8")
    with pytest.raises(TermexError):
        load_gold(p, "cause", "en")


def test_overlap_igneous():
    sets = [cset("composition", ["igneous", "shale"]), cset("function", ["igneous", "porous"]),
            cset("cause", ["igneous", "porous"])]
    rep = cross_relation_overlap(sets)
    assert rep["igneous"] == {Relation.COMPOSITION, Relation.FUNCTION, Relation.CAUSE}
    assert [w for w, _ in rep.entries] == ["igneous", "porous"]
    assert "shale" not in rep


def test_overlap_edge_cases():
    assert len(cross_relation_overlap([cset("cause", ["a"]), cset("form", ["b"])])) == 0
    with pytest.raises(ValueError):
        cross_relation_overlap([cset("cause", ["a"])])
    with pytest.raises(ValueError):
        cross_relation_overlap([cset("cause", ["a"]), cset("form", ["a"], lang="HR")])


@given(st.permutations(range(4)))
def test_overlap_order_independent(perm):
    base = [cset("cause", ["a", "b", "c"]), cset("form", ["b", "c"]), cset("location", ["c", "d"]),
            cset("function", ["d", "a"])]
    assert cross_relation_overlap([base[i] for i in perm]) == cross_relation_overlap(base)


def table_scores():
    cells = [("LOCATION", 357, 118, 228, 88), ("FUNCTION", 147, 68, 152, 43), ("FORM", 164, 108, 152, 97),
             ("COMPOSITION", 293, 184, 244, 197), ("CAUSE", 183, 88, 181, 132)]
    out = []
    for rel, ne, ce, nh, ch in cells:
        out.append(RelationScore(Relation[rel], Language.EN, ne, ce))
        out.append(RelationScore(Relation[rel], Language.HR, nh, ch))
    return out


def test_markdown_table_layout():
    md = emit_report(table_scores())
    lines = md.splitlines()
    header = next(l for l in lines if l.startswith("| |"))
    assert header == "| | location en | location hr | function en | function hr | form en | form hr | " \
                     "composition en | composition hr | cause en | cause hr |"
    p_row = next(l for l in lines if l.startswith("| P |"))
    assert p_row.split("|")[2:-1] == [f" {x} " for x in "0.33 0.39 0.46 0.28 0.66 0.64 0.63 0.81 0.48 0.73".split()]
    assert emit_report(table_scores()) == md


def test_empty_report_has_no_data_sections():
    md = emit_report()
    assert md.count("No data.") == 3


def test_json_roundtrip():
    ov = cross_relation_overlap([cset("cause", ["a", "b"]), cset("form", ["a"])])
    clusters = {"cause_en": suffix_clusters(["epigenic", "geogenic"], ["allogenic"])}
    text = emit_report(table_scores(), ov, clusters, "json")
    assert json.loads(text)["schema"] == "termex-report/1"
    scores, overlaps, cl = load_report(text)
    assert scores == table_scores() and overlaps == [ov] and cl == clusters
    with pytest.raises(ValueError):
        emit_report(format="html")
