"""Plain-text vector files: a ``<count> <dim>`` header, then one
``word v1 ... vdim`` line per word."""
from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from ..errors import VectorFormatError
from .model import EmbeddingModel, TrainConfig
from .vocab import Vocabulary

log = logging.getLogger(__name__)


def save_vectors(model: EmbeddingModel, path: str | Path) -> None:
    vectors = model.vectors()
    words = model.vocabulary.words
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(words)} {vectors.shape[1] if len(words) else model.dim}\n")
        for word, row in zip(words, vectors):
            fh.write(word + " " + " ".join(f"{x:.6f}" for x in row) + "\n")


def load_vectors(path: str | Path) -> EmbeddingModel:
    """Load a vector file as a query-only model (no subword table)."""
    path = Path(path)
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise VectorFormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    with fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise VectorFormatError("header must be '<vocab_size> <dim>'", 1)
        try:
            size, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise VectorFormatError("header must be '<vocab_size> <dim>'", 1) from None
        if size < 0 or dim < 1:
            raise VectorFormatError("header values out of range", 1)
        words: list[str] = []
        rows = np.zeros((size, dim), dtype=np.float64)
        seen = set()
        read = 0
        lineno = 1
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            fields = line.split(" ")
            if len(fields) != dim + 1:
                raise VectorFormatError(f"expected {dim} components, got {len(fields) - 1}", lineno)
            if read >= size:
                raise VectorFormatError(f"more rows than the {size} declared in the header", lineno)
            read += 1
            try:
                values = [float(x) for x in fields[1:]]
            except ValueError:
                raise VectorFormatError("non-numeric vector component", lineno) from None
            word = fields[0]
            if word in seen:
                log.warning("%s:%d: duplicate word %r ignored", path, lineno, word)
                continue
            seen.add(word)
            rows[len(words)] = values
            words.append(word)
        if read != size:
            raise VectorFormatError(f"header declares {size} rows, found {read}", lineno)
    n = len(words)
    vocab = Vocabulary(words, np.zeros(n, dtype=np.int64), min_count=0, total_tokens=0)
    return EmbeddingModel(TrainConfig(dim=dim), vocab, rows[:n])
