"""Cluster the shipped karst adjective lists and rebuild the precision table.

The lists are the extracted words of a karstology study for five relations
in English and Croatian; here we only run the deterministic parts of the
pipeline over them (no corpus or embeddings needed).
"""
from termex.corpus import Language
from termex.evaluation import RelationScore, emit_report
from termex.expansion import Relation
from termex.morphology import ClusterConfig, cluster_all
from termex.reference import extracted_entry, extracted_words, karst_terms, reference_scores

config = ClusterConfig(term_lexicon=tuple(karst_terms()))

for rel, lang in [("CAUSE", "EN"), ("LOCATION", "EN"), ("FORM", "HR")]:
    words = extracted_words(rel, lang)
    result = cluster_all(words, extracted_entry(rel, lang)["seeds"], config)
    print(f"\n== {rel.lower()}/{lang.lower()}: {len(words)} words")
    for kind in ("suffix", "prefix", "derivational"):
        # the five largest clusters of each kind
        for c in result[kind][:5]:
            anchors = ", ".join(c.anchor_seeds) or "no seed"
            print(f"  {c.label:<14} {len(c.members):>3}  [{anchors}]")
    print(f"  residual: {', '.join(result['residual'][:8])}{' ...' if len(result['residual']) > 8 else ''}")

# the reference (N, C) pairs, re-scored with half-up rounding
scores = [
    RelationScore(Relation.parse(r["relation"]), Language.parse(r["language"]), r["n_extracted"], r["n_correct"])
    for r in reference_scores()
]
print()
print(emit_report(scores).split("## Words")[0])
