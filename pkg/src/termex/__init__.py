"""Relation-specific terminology extraction from subword word embeddings.

Train skip-gram vectors with character n-gram buckets, expand seed
adjectives through intersecting cosine-neighbour sets, group the results
by shared affixes and score them against gold judgments.
"""
__version__ = "0.1.0"

# re-exported public API

from .corpus import Corpus, CorpusStats, Language, corpus_stats, ingest, ingest_dir, tokenize
from .embedding import EmbeddingModel, TrainConfig, load_vectors, save_vectors, train, word_vector
from .errors import TermexError
from .evaluation import RelationScore, cross_relation_overlap, emit_report, load_gold, score
from .expansion import CandidateSet, Relation, RelationSpec, expand, load_seed_file
from .morphology import ClusterConfig, cluster_all, derivational_clusters, prefix_clusters, suffix_clusters
from .vecindex import VectorIndex, build_index, cosine, nearest
