"""Document ingestion, sentence/token segmentation and corpus statistics."""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import IngestError


class Language(str, Enum):
    EN = "EN"
    HR = "HR"

    @classmethod
    def parse(cls, value: "str | Language") -> "Language":
        if isinstance(value, Language):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise IngestError(f"unsupported language tag {value!r} (expected en or hr)") from None


@dataclass(frozen=True)
class Document:
    id: str
    language: Language
    text: str


@dataclass(frozen=True)
class Corpus:
    """Ordered documents plus, once tokenized, their sentences.

    ``sentences[i]`` holds the token sequences of ``documents[i]``; it is
    ``None`` until :func:`tokenize` has run.
    """

    documents: tuple[Document, ...] = ()
    sentences: tuple[tuple[tuple[str, ...], ...], ...] | None = None

    def __post_init__(self):
        ids = [d.id for d in self.documents]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise IngestError(f"duplicate document ids: {', '.join(dup)}")
        if self.sentences is not None and len(self.sentences) != len(self.documents):
            raise ValueError("sentences must align with documents")

    @property
    def tokenized(self) -> bool:
        return self.sentences is not None

    def iter_sentences(self) -> Iterator[tuple[str, ...]]:
        if self.sentences is None:
            raise ValueError("corpus has not been tokenized")
        for doc_sentences in self.sentences:
            yield from doc_sentences

    def __add__(self, other: "Corpus") -> "Corpus":
        if self.tokenized != other.tokenized:
            raise ValueError("cannot concatenate a tokenized and an untokenized corpus")
        sentences = None
        if self.tokenized:
            sentences = self.sentences + other.sentences
        return Corpus(self.documents + other.documents, sentences)


@dataclass(frozen=True)
class CorpusStats:
    tokens: int = 0
    words: int = 0
    sentences: int = 0
    documents: int = 0

    def __add__(self, other: "CorpusStats") -> "CorpusStats":
        return CorpusStats(
            self.tokens + other.tokens,
            self.words + other.words,
            self.sentences + other.sentences,
            self.documents + other.documents,
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "tokens": self.tokens,
            "words": self.words,
            "sentences": self.sentences,
            "documents": self.documents,
        }


@dataclass(frozen=True)
class TokenizerConfig:
    lowercase: bool = True


def ingest(paths: Iterable[str | Path], language: str | Language) -> Corpus:
    """Read UTF-8 text files into a :class:`Corpus`, one document per file.

    Documents are ordered by path and named after the file stem.
    """
    language = Language.parse(language)
    docs = []
    for path in sorted(Path(p) for p in paths):
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise IngestError(f"cannot read {path}: {exc.strerror or exc}") from exc
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise IngestError(
                f"{path}: invalid UTF-8 at byte offset {exc.start}"
            ) from exc
        docs.append(Document(id=path.stem, language=language, text=text))
    return Corpus(tuple(docs))


def ingest_dir(directory: str | Path, language: str | Language, pattern: str = "*.txt") -> Corpus:
    directory = Path(directory)
    if not directory.is_dir():
        raise IngestError(f"not a directory: {directory}")
    return ingest(directory.glob(pattern), language)


_TERMINAL = re.compile(r"[.!?]+(\s+)")
_TOKEN = re.compile(r"\w+|[^\w\s]")


def split_sentences(text: str) -> list[str]:
    # a boundary needs terminal punctuation, whitespace, then an uppercase letter
    out = []
    start = 0
    for m in _TERMINAL.finditer(text):
        nxt = m.end()
        if nxt < len(text) and text[nxt].isupper():
            out.append(text[start:m.start(1)])
            start = nxt
    out.append(text[start:])
    return [s.strip() for s in out if s.strip()]


def tokenize_text(text: str, rules: TokenizerConfig = TokenizerConfig()) -> list[tuple[str, ...]]:
    sentences = []
    for sent in split_sentences(text):
        if rules.lowercase:
            sent = sent.lower()
        tokens = tuple(_TOKEN.findall(sent))
        if tokens:
            sentences.append(tokens)
    return sentences


def tokenize(corpus: Corpus, rules: TokenizerConfig = TokenizerConfig()) -> Corpus:
    """Return a copy of ``corpus`` with sentences populated."""
    sentences = tuple(tuple(tokenize_text(d.text, rules)) for d in corpus.documents)
    return Corpus(corpus.documents, sentences)


def is_word(token: str) -> bool:
    return any(ch.isalpha() for ch in token)


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Count tokens, words (tokens with a letter), sentences and documents."""
    if not corpus.documents:
        return CorpusStats()
    tokens = words = sentences = 0
    for sent in corpus.iter_sentences():
        sentences += 1
        tokens += len(sent)
        words += sum(1 for t in sent if is_word(t))
    return CorpusStats(tokens, words, sentences, len(corpus.documents))


def from_sentences(
    sentences: Sequence[Sequence[str]],
    language: str | Language = Language.EN,
    doc_id: str = "doc",
) -> Corpus:
    """Wrap already-tokenized sentences in a single-document corpus."""
    language = Language.parse(language)
    sents = tuple(tuple(s) for s in sentences)
    text = "\n".join(" ".join(s) for s in sents)
    return Corpus((Document(doc_id, language, text),), (sents,))
