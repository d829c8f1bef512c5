"""Seeded synthetic corpora with planted suffix families.

Each family stands in for one semantic relation: its members are random
stems carrying a shared suffix (``-genic`` ...).  The family's context pool
is split among its members, so every member gets its own associate words.

Two kinds of sentence are generated, each tied to one family:

* family sentences string several members of the family together;
* member sentences put one member among its own associate words.

Members therefore share contexts with each other (and a suffix) while each
keeps an individual neighbourhood of associates, which is what intersecting
neighbour sets is meant to exploit.  Noise tokens are drawn from a separate
vocabulary.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import Corpus, Document, Language, tokenize
from .errors import SynthSpecError

_LETTERS = np.array(list("abcdefghijklmnopqrstuvwxyz"))


@dataclass(frozen=True)
class FamilySpec:
    relation: str
    suffix: str
    size: int = 20
    # number of associate words to generate, or an explicit word list
    context: int | tuple[str, ...] = 640

    def __post_init__(self):
        object.__setattr__(self, "suffix", self.suffix.lstrip("-"))
        if not isinstance(self.context, int):
            object.__setattr__(self, "context", tuple(self.context))


@dataclass(frozen=True)
class SynthSpec:
    families: tuple[FamilySpec, ...]
    sentences: int = 5000
    rng_seed: int = 7
    noise_rate: float = 0.3
    noise_vocab: int = 500
    member_sentence_rate: float = 0.7
    family_sentence_length: tuple[int, int] = (6, 12)
    member_sentence_length: tuple[int, int] = (8, 14)
    stem_length: tuple[int, int] = (4, 7)
    language: str = "EN"

    def validate(self) -> "SynthSpec":
        if not self.families:
            raise SynthSpecError("synthetic spec needs at least one family")
        if not 0 <= self.noise_rate < 1:
            raise SynthSpecError("noise_rate must be in [0, 1)")
        if not 0 <= self.member_sentence_rate <= 1:
            raise SynthSpecError("member_sentence_rate must be in [0, 1]")
        if self.sentences < 0:
            raise SynthSpecError("sentences must be >= 0")
        for lo, hi in (self.family_sentence_length, self.member_sentence_length, self.stem_length):
            if not 1 <= lo <= hi:
                raise SynthSpecError("length ranges need 1 <= min <= max")
        suffixes = [f.suffix for f in self.families]
        if len(set(suffixes)) != len(suffixes) or not all(suffixes):
            raise SynthSpecError("family suffixes must be non-empty and distinct")
        for a in suffixes:
            for b in suffixes:
                if a != b and a.endswith(b):
                    raise SynthSpecError(f"suffix {a!r} ends with suffix {b!r}; families would overlap")
        for f in self.families:
            if f.size < 1:
                raise SynthSpecError(f"family {f.relation}: size must be >= 1")
            n_ctx = f.context if isinstance(f.context, int) else len(f.context)
            if n_ctx < 0:
                raise SynthSpecError(f"family {f.relation}: context size must be >= 0")
        if self.noise_rate > 0 and self.noise_vocab < 1:
            raise SynthSpecError("noise_rate > 0 needs a noise vocabulary")
        Language.parse(self.language)
        return self

    def as_dict(self) -> dict:
        d = asdict(self)
        for fam in d["families"]:
            if not isinstance(fam["context"], int):
                fam["context"] = list(fam["context"])
        for key in ("family_sentence_length", "member_sentence_length", "stem_length"):
            d[key] = list(d[key])
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "SynthSpec":
        data = dict(data)
        try:
            fams = tuple(FamilySpec(**f) for f in data.pop("families"))
            for key in ("family_sentence_length", "member_sentence_length", "stem_length"):
                if key in data:
                    data[key] = tuple(data[key])
            return cls(families=fams, **data).validate()
        except (KeyError, TypeError) as exc:
            raise SynthSpecError(f"malformed synthetic spec: {exc}") from exc


def default_spec(rng_seed: int = 7, sentences: int = 5000) -> SynthSpec:
    """Three 20-word families, the configuration used by the acceptance run."""
    return SynthSpec(
        families=(
            FamilySpec("CAUSE", "genic"),
            FamilySpec("FORM", "oidal"),
            FamilySpec("COMPOSITION", "aceous"),
        ),
        sentences=sentences,
        rng_seed=rng_seed,
    )


@dataclass
class Manifest:
    """Planted truth: members and associates per family, plus noise words."""

    families: list[dict]
    noise: list[str]
    rng_seed: int

    def members(self, relation: str) -> list[str]:
        for f in self.families:
            if f["relation"] == relation:
                return list(f["members"])
        raise KeyError(relation)

    @property
    def word_family(self) -> dict[str, str]:
        return {w: f["relation"] for f in self.families for w in f["members"]}

    def as_dict(self) -> dict:
        return {"rng_seed": self.rng_seed, "families": self.families, "noise": self.noise}

    @classmethod
    def from_dict(cls, data: dict) -> "Manifest":
        return cls(data["families"], data["noise"], data["rng_seed"])


class _Words:
    def __init__(self, rng, stem_length, forbidden_endings):
        self.rng = rng
        self.lo, self.hi = stem_length
        self.used: set[str] = set()
        self.forbidden = tuple(forbidden_endings)

    def fresh(self, n, suffix=""):
        out = []
        while len(out) < n:
            length = int(self.rng.integers(self.lo, self.hi + 1))
            w = "".join(self.rng.choice(_LETTERS, length)) + suffix
            if w in self.used:
                continue
            if not suffix and w.endswith(self.forbidden):
                continue
            self.used.add(w)
            out.append(w)
        return out


def generate(spec: SynthSpec) -> tuple[Corpus, Manifest]:
    spec.validate()
    rng = np.random.default_rng(spec.rng_seed)
    words = _Words(rng, spec.stem_length, [f.suffix for f in spec.families])

    families = []
    for f in spec.families:
        members = words.fresh(f.size, f.suffix)
        families.append({"relation": f.relation, "suffix": f.suffix, "members": members})
    for f, fam in zip(spec.families, families):
        if isinstance(f.context, int):
            pool = words.fresh(f.context)
        else:
            pool = list(f.context)
            words.used.update(pool)
        fam["context"] = {m: pool[i::len(fam["members"])] for i, m in enumerate(fam["members"])}
    noise = words.fresh(spec.noise_vocab) if spec.noise_rate > 0 else []

    def noise_or(word_fn):
        if noise and rng.random() < spec.noise_rate:
            return noise[int(rng.integers(len(noise)))]
        return word_fn()

    sentences = []
    for _ in range(spec.sentences):
        fam = families[int(rng.integers(len(families)))]
        members = fam["members"]
        if rng.random() < spec.member_sentence_rate and any(fam["context"].values()):
            m = members[int(rng.integers(len(members)))]
            assoc = fam["context"][m] or [m]
            n = int(rng.integers(spec.member_sentence_length[0], spec.member_sentence_length[1] + 1))
            pos = int(rng.integers(n))
            sent = [m if i == pos else noise_or(lambda: assoc[int(rng.integers(len(assoc)))]) for i in range(n)]
        else:
            n = int(rng.integers(spec.family_sentence_length[0], spec.family_sentence_length[1] + 1))
            sent = [noise_or(lambda: members[int(rng.integers(len(members)))]) for _ in range(n)]
        sentences.append(sent)

    corpus = tokenize(Corpus((Document("synth", Language.parse(spec.language), render(sentences)),)))
    return corpus, Manifest(families, noise, spec.rng_seed)


def render(sentences: Sequence[Sequence[str]]) -> str:
    """One capitalized, full-stopped sentence per line."""
    lines = []
    for sent in sentences:
        if not sent:
            continue
        text = " ".join(sent)
        lines.append(text[0].upper() + text[1:] + ".")
    return "\n".join(lines) + ("\n" if lines else "")


def write_corpus(corpus: Corpus, out_dir: str | Path) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for doc in corpus.documents:
        p = out_dir / f"{doc.id}.txt"
        p.write_text(doc.text, encoding="utf-8", newline="\n")
        paths.append(p)
    return paths


def write_manifest(manifest: Manifest, path: str | Path) -> None:
    Path(path).write_text(json.dumps(manifest.as_dict(), ensure_ascii=False, indent=1) + "\n", encoding="utf-8")


def load_manifest(path: str | Path) -> Manifest:
    return Manifest.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def seed_entries(manifest: Manifest, n_seeds: int = 5, language: str = "EN") -> list[dict]:
    """Seed-file entries taking the first ``n_seeds`` members of each family."""
    return [
        {"relation": f["relation"], "language": language.upper(), "seeds": f["members"][:n_seeds]}
        for f in manifest.families
    ]


def gold_lines(manifest: Manifest, relation: str) -> list[str]:
    """Gold TSV rows: a family's members are correct, other members are not."""
    rows = []
    for f in manifest.families:
        verdict = "CORRECT" if f["relation"] == relation else "INCORRECT"
        rows.extend(f"{w}\t{verdict}" for w in f["members"])
    return rows


def recovery(candidates: Sequence[str], manifest: Manifest, relation: str, seeds: Sequence[str]) -> tuple[float, float]:
    """(precision, recall) of extracted words against one planted family."""
    members = set(manifest.members(relation))
    targets = members - set(seeds)
    found = set(candidates)
    precision = len(found & members) / len(found) if found else 0.0
    recall = len(found & targets) / len(targets) if targets else 1.0
    return precision, recall
