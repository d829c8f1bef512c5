"""Skip-gram with negative sampling over word + subword-bucket inputs.

The input representation of a target word is the *sum* of its word row and
the rows of its n-gram buckets; the loss for one (target, context) pair is

    -log s(u_ctx . h) - sum_neg log s(-u_neg . h)

with ``s`` the logistic function.  The hot loop is compiled with numba.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numba import njit

from ..corpus import Corpus
from ..errors import TrainingError
from .model import EmbeddingModel, TrainConfig
from .subword import ngram_buckets
from .vocab import Vocabulary, build_vocab

log = logging.getLogger(__name__)

NEG_TABLE_SIZE = 1_000_000
_MAX_EXP = 30.0


@njit(cache=True, nogil=True)
def _log_sigmoid(x):
    if x > _MAX_EXP:
        return 0.0
    if x < -_MAX_EXP:
        return x
    return -np.log1p(np.exp(-x))


@njit(cache=True, nogil=True)
def _sigmoid(x):
    if x > _MAX_EXP:
        return 1.0
    if x < -_MAX_EXP:
        return 0.0
    return 1.0 / (1.0 + np.exp(-x))


@njit(cache=True, nogil=True)
def _sgns_grads(h, out, targets, n_targets, grad_h, grad_out):
    """Loss and gradients for one pair; ``targets[0]`` is the positive.

    Writes dL/dh into ``grad_h`` and dL/du for each target row into
    ``grad_out[:n_targets]``. No parameters are modified.
    """
    dim = h.shape[0]
    for d in range(dim):
        grad_h[d] = 0.0
    loss = 0.0
    for i in range(n_targets):
        row = out[targets[i]]
        score = 0.0
        for d in range(dim):
            score += row[d] * h[d]
        if i == 0:
            loss -= _log_sigmoid(score)
            coef = _sigmoid(score) - 1.0
        else:
            loss -= _log_sigmoid(-score)
            coef = _sigmoid(score)
        for d in range(dim):
            grad_h[d] += coef * row[d]
            grad_out[i, d] = coef * h[d]
    return loss


def sgns_loss_and_grads(input_rows, out_rows):
    """Loss and analytic gradients for a single training pair.

    ``input_rows`` are the word row followed by its bucket rows (summed to
    form the hidden vector); ``out_rows[0]`` is the context's output row and
    the rest are negatives. Returns ``(loss, grad_h, grad_out)``; the
    gradient w.r.t. every input row equals ``grad_h``.
    """
    input_rows = np.atleast_2d(np.asarray(input_rows, dtype=np.float64))
    out_rows = np.atleast_2d(np.asarray(out_rows, dtype=np.float64))
    h = input_rows.sum(axis=0)
    n = out_rows.shape[0]
    targets = np.arange(n, dtype=np.int64)
    grad_h = np.zeros_like(h)
    grad_out = np.zeros_like(out_rows)
    loss = _sgns_grads(h, out_rows, targets, n, grad_h, grad_out)
    return float(loss), grad_h, grad_out


@njit(cache=True, nogil=True)
def _next(state):
    # 64-bit LCG (constants from the original word2vec tool); the state is a
    # one-element uint64 array so it can be threaded through calls.
    state[0] = state[0] * np.uint64(25214903917) + np.uint64(11)
    return state[0]


@njit(cache=True, nogil=True)
def _uniform(state):
    return (_next(state) >> np.uint64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True, nogil=True)
def _randint(state, n):
    return np.int64((_next(state) >> np.uint64(16)) % np.uint64(n))


@njit(cache=True, nogil=True)
def _train_chunk(tokens, sent_offsets, s_begin, s_end, ngram_offsets, ngram_ids,
                 word_in, sub_in, out, neg_table, keep_prob,
                 window, negatives, lr0, epochs, seed):
    dim = word_in.shape[1]
    state = np.empty(1, dtype=np.uint64)
    state[0] = np.uint64(seed)
    n_tokens = sent_offsets[s_end] - sent_offsets[s_begin]
    total_steps = max(1, epochs * n_tokens)
    longest = 0
    for s in range(s_begin, s_end):
        longest = max(longest, sent_offsets[s + 1] - sent_offsets[s])
    buf = np.empty(longest, dtype=np.int64)
    h = np.empty(dim, dtype=word_in.dtype)
    grad_h = np.empty(dim, dtype=word_in.dtype)
    grad_out = np.empty((negatives + 1, dim), dtype=word_in.dtype)
    targets = np.empty(negatives + 1, dtype=np.int64)
    step = 0
    total_loss = 0.0
    n_pairs = 0
    for epoch in range(epochs):
        for s in range(s_begin, s_end):
            lo = sent_offsets[s]
            hi = sent_offsets[s + 1]
            n = 0
            for p in range(lo, hi):
                w = tokens[p]
                if keep_prob[w] >= 1.0 or _uniform(state) < keep_prob[w]:
                    buf[n] = w
                    n += 1
            lr = lr0 * (1.0 - step / total_steps)
            step += hi - lo
            for i in range(n):
                t = buf[i]
                b = 1 + _randint(state, window)
                j0 = max(0, i - b)
                j1 = min(n, i + b + 1)
                g0 = ngram_offsets[t]
                g1 = ngram_offsets[t + 1]
                for j in range(j0, j1):
                    if j == i:
                        continue
                    ctx = buf[j]
                    for d in range(dim):
                        h[d] = word_in[t, d]
                    for g in range(g0, g1):
                        row = sub_in[ngram_ids[g]]
                        for d in range(dim):
                            h[d] += row[d]
                    targets[0] = ctx
                    m = 1
                    for _ in range(negatives):
                        neg = neg_table[_randint(state, neg_table.shape[0])]
                        tries = 0
                        while neg == ctx and tries < 10:
                            neg = neg_table[_randint(state, neg_table.shape[0])]
                            tries += 1
                        if neg == ctx:
                            continue
                        targets[m] = neg
                        m += 1
                    total_loss += _sgns_grads(h, out, targets, m, grad_h, grad_out)
                    n_pairs += 1
                    for k in range(m):
                        row = out[targets[k]]
                        for d in range(dim):
                            row[d] -= lr * grad_out[k, d]
                    for d in range(dim):
                        word_in[t, d] -= lr * grad_h[d]
                    for g in range(g0, g1):
                        row = sub_in[ngram_ids[g]]
                        for d in range(dim):
                            row[d] -= lr * grad_h[d]
    return total_loss, n_pairs


def negative_table(counts: np.ndarray, size: int = NEG_TABLE_SIZE) -> np.ndarray:
    """Sampling table for the unigram^0.75 noise distribution."""
    weights = np.asarray(counts, dtype=np.float64) ** 0.75
    cdf = np.cumsum(weights / weights.sum())
    points = (np.arange(size) + 0.5) / size
    return np.minimum(np.searchsorted(cdf, points), len(counts) - 1).astype(np.int64)


def keep_probabilities(counts: np.ndarray, t: float) -> np.ndarray:
    """Per-word probability of surviving frequent-word subsampling."""
    counts = np.asarray(counts, dtype=np.float64)
    if t <= 0 or len(counts) == 0:
        return np.ones(len(counts))
    f = counts / counts.sum()
    return np.minimum(1.0, np.sqrt(t / f) + t / f)


def _encode(corpus, vocab: Vocabulary):
    ids = []
    offsets = [0]
    index = vocab.index
    for sent in (corpus.iter_sentences() if isinstance(corpus, Corpus) else corpus):
        enc = [index[w] for w in sent if w in index]
        if len(enc) < 2:
            continue
        ids.extend(enc)
        offsets.append(len(ids))
    return np.asarray(ids, dtype=np.int64), np.asarray(offsets, dtype=np.int64)


def _ngram_table(vocab: Vocabulary, config: TrainConfig):
    offsets = [0]
    ids: list[int] = []
    for w in vocab.words:
        ids.extend(ngram_buckets(w, config.ngram_min, config.ngram_max, config.buckets))
        offsets.append(len(ids))
    return np.asarray(offsets, dtype=np.int64), np.asarray(ids, dtype=np.int64)


def initialize(vocab: Vocabulary, config: TrainConfig) -> EmbeddingModel:
    """Seeded starting point: inputs uniform in +-1/dim, outputs zero."""
    rng = np.random.default_rng(config.rng_seed)
    bound = 1.0 / config.dim
    word_in = rng.uniform(-bound, bound, (len(vocab), config.dim)).astype(np.float32)
    sub_in = rng.uniform(-bound, bound, (config.buckets, config.dim)).astype(np.float32)
    out = np.zeros((len(vocab), config.dim), dtype=np.float32)
    return EmbeddingModel(config, vocab, word_in, sub_in, out)


def train(corpus, config: TrainConfig = TrainConfig(), vocab: Vocabulary | None = None) -> EmbeddingModel:
    """Train subword skip-gram vectors on a tokenized corpus."""
    config.validate()
    if vocab is None:
        vocab = build_vocab(corpus, config.min_count)
    if len(vocab) == 0:
        raise TrainingError("vocabulary is empty (corpus too small for min_count?)")
    model = initialize(vocab, config)
    if config.epochs == 0:
        return model
    tokens, offsets = _encode(corpus, vocab)
    n_sent = len(offsets) - 1
    if n_sent == 0:
        log.warning("no sentence has two in-vocabulary tokens; nothing to train")
        return model
    ng_off, ng_ids = _ngram_table(vocab, config)
    neg = negative_table(vocab.counts)
    keep = keep_probabilities(vocab.counts, config.subsample_t)
    args = (ng_off, ng_ids, model.word_input, model.subword, model.output, neg, keep,
            config.window, config.negatives, config.learning_rate, config.epochs)

    if config.workers <= 1:
        loss, pairs = _train_chunk(tokens, offsets, 0, n_sent, *args, _seed(config.rng_seed, 0))
    else:
        bounds = np.linspace(0, n_sent, config.workers + 1).astype(int)
        with ThreadPoolExecutor(config.workers) as pool:
            futures = [
                pool.submit(_train_chunk, tokens, offsets, int(lo), int(hi), *args, _seed(config.rng_seed, k))
                for k, (lo, hi) in enumerate(zip(bounds[:-1], bounds[1:]))
                if hi > lo
            ]
            results = [f.result() for f in futures]
        loss = sum(r[0] for r in results)
        pairs = sum(r[1] for r in results)
    if pairs:
        log.info("trained %d pairs, mean loss %.4f", pairs, loss / pairs)
    if not (np.isfinite(model.word_input).all() and np.isfinite(model.subword).all()):
        raise TrainingError("training diverged (non-finite vectors); lower learning_rate")
    return model


def _seed(rng_seed: int, worker: int) -> int:
    return (int(rng_seed) * 1_000_003 + worker * 7919 + 1) & 0xFFFFFFFFFFFFFFFF
