"""Subword skip-gram embeddings."""
from .model import EmbeddingModel, TrainConfig, word_vector
from .subword import fnv1a_32, ngram_buckets, subword_ngrams
from .train import initialize, sgns_loss_and_grads, train
from .vectorio import load_vectors, save_vectors
from .vocab import Vocabulary, build_vocab

__all__ = [
    "EmbeddingModel",
    "TrainConfig",
    "Vocabulary",
    "build_vocab",
    "fnv1a_32",
    "initialize",
    "load_vectors",
    "ngram_buckets",
    "save_vectors",
    "sgns_loss_and_grads",
    "subword_ngrams",
    "train",
    "word_vector",
]
