"""Plant three suffix families in a synthetic corpus and get them back.

Run with ``python demos/synthetic_recovery.py``; takes a few seconds.
"""
from termex.embedding import TrainConfig, train
from termex.expansion import RelationSpec, expand
from termex.morphology import suffix_clusters
from termex.synthfix import default_spec, generate, recovery
from termex.vecindex import build_index, nearest

# 5,000 sentences; each family has 20 members ending in -genic, -oidal or -aceous
corpus, manifest = generate(default_spec(rng_seed=7, sentences=5000))
print(f"{sum(len(s) for s in corpus.iter_sentences()):,} tokens")

# small deterministic model; the corpus is tiny, so subsample lightly
config = TrainConfig(dim=50, min_count=5, buckets=20_000, epochs=5, subsample_t=1e-3, rng_seed=42)
index = build_index(train(corpus, config))

first = manifest.families[0]["members"][0]
print(f"\nnearest to {first}:")
for word, cos in nearest(index, first, 5).neighbors:
    print(f"  {word:<16}{cos:.3f}")

# expand five seeds per family and compare with the planted truth
for fam in manifest.families:
    seeds = fam["members"][:5]
    cs = expand(RelationSpec(fam["relation"], "en", seeds), index, k=50)
    p, r = recovery(cs.words, manifest, fam["relation"], seeds)
    top = suffix_clusters(cs.words, seeds)[0]
    print(f"\n{fam['relation']:<12} {len(cs)} candidates, precision {p:.2f}, recall {r:.2f}")
    print(f"  largest suffix cluster {top.label} ({len(top.members)} members, anchored by {len(top.anchor_seeds)} seeds)")
