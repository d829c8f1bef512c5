"""Precision against gold judgments, cross-relation overlaps and reports."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import Language
from .errors import TermexError
from .expansion import CandidateSet, Relation
from .morphology import Cluster

log = logging.getLogger(__name__)

REPORT_SCHEMA = "termex-report/1"
# column order of the reference precision table
TABLE_RELATIONS = (Relation.LOCATION, Relation.FUNCTION, Relation.FORM, Relation.COMPOSITION, Relation.CAUSE)
TABLE_LANGUAGES = (Language.EN, Language.HR)


class Verdict(str, Enum):
    CORRECT = "CORRECT"
    INCORRECT = "INCORRECT"


_VERDICT_WORDS = {
    "correct": Verdict.CORRECT, "c": Verdict.CORRECT, "1": Verdict.CORRECT, "yes": Verdict.CORRECT, "true": Verdict.CORRECT,
    "incorrect": Verdict.INCORRECT, "i": Verdict.INCORRECT, "0": Verdict.INCORRECT, "no": Verdict.INCORRECT, "false": Verdict.INCORRECT,
}


@dataclass(frozen=True)
class GoldAnnotation:
    language: Language
    relation: Relation
    judgments: Mapping[str, Verdict]


@dataclass(frozen=True)
class RelationScore:
    relation: Relation
    language: Language
    n_extracted: int
    n_correct: int
    n_unjudged: int = 0

    def __post_init__(self):
        if not 0 <= self.n_correct <= self.n_extracted:
            raise ValueError("need 0 <= n_correct <= n_extracted")

    @property
    def precision(self) -> float | None:
        """Precision rounded half-up to two decimals; ``None`` when nothing was extracted."""
        if self.n_extracted == 0:
            return None
        return round_half_up_2(self.n_correct, self.n_extracted)

    @property
    def precision_text(self) -> str:
        p = self.precision
        return "n/a" if p is None else f"{p:.2f}"

    def as_dict(self) -> dict:
        return {
            "relation": self.relation.value,
            "language": self.language.value,
            "n_extracted": self.n_extracted,
            "n_correct": self.n_correct,
            "n_unjudged": self.n_unjudged,
            "precision": self.precision,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RelationScore":
        return cls(Relation.parse(d["relation"]), Language.parse(d["language"]),
                   int(d["n_extracted"]), int(d["n_correct"]), int(d.get("n_unjudged", 0)))


@dataclass(frozen=True)
class OverlapReport:
    """Words extracted for two or more relations, most relations first."""

    entries: tuple[tuple[str, tuple[Relation, ...]], ...] = ()
    language: Language | None = None

    def as_dict(self) -> dict:
        return {
            "language": self.language.value if self.language else None,
            "entries": [{"word": w, "relations": [r.value for r in rels]} for w, rels in self.entries],
        }

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, word: str) -> set[Relation]:
        for w, rels in self.entries:
            if w == word:
                return set(rels)
        raise KeyError(word)

    def __contains__(self, word):
        return any(w == word for w, _ in self.entries)

    @classmethod
    def from_dict(cls, d: dict) -> "OverlapReport":
        lang = Language.parse(d["language"]) if d.get("language") else None
        return cls(tuple((e["word"], tuple(Relation.parse(r) for r in e["relations"])) for e in d["entries"]), lang)


def round_half_up_2(num: int, den: int) -> float:
    # exact integer arithmetic: floor(100 * num / den + 1/2)
    return ((200 * num + den) // (2 * den)) / 100


def parse_verdict(label: str, relation: Relation) -> Verdict:
    key = label.strip().lower()
    if key in _VERDICT_WORDS:
        return _VERDICT_WORDS[key]
    try:
        other = Relation.parse(key)
    except TermexError:
        raise TermexError(f"unrecognised verdict or relation label {label!r}") from None
    return Verdict.CORRECT if other == relation else Verdict.INCORRECT


def load_gold(path: str | Path, relation, language) -> GoldAnnotation:
    """Read ``word<TAB>verdict`` or ``word<TAB>relation-label`` lines."""
    relation = Relation.parse(relation)
    language = Language.parse(language)
    judgments: dict[str, Verdict] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise TermexError(f"cannot read gold file {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip():
            raise TermexError(f"{path}:{lineno}: expected 'word<TAB>verdict'")
        word = parts[0].strip()
        verdict = parse_verdict(parts[1], relation)
        if judgments.get(word, verdict) != verdict:
            raise TermexError(f"{path}:{lineno}: conflicting verdicts for {word!r}")
        judgments[word] = verdict
    return GoldAnnotation(language, relation, judgments)


def score(candidates: CandidateSet | Sequence[str], gold: GoldAnnotation) -> RelationScore:
    """N extracted, C judged correct, and their rounded ratio.

    Candidates missing from the gold file count toward N only.
    """
    words = candidates.words if isinstance(candidates, CandidateSet) else list(dict.fromkeys(candidates))
    n_correct = sum(1 for w in words if gold.judgments.get(w) is Verdict.CORRECT)
    unjudged = sum(1 for w in words if w not in gold.judgments)
    if unjudged:
        log.info("%s/%s: %d candidates have no gold verdict", gold.relation.value, gold.language.value, unjudged)
    return RelationScore(gold.relation, gold.language, len(words), n_correct, unjudged)


def cross_relation_overlap(candidate_sets: Mapping | Sequence[CandidateSet]) -> OverlapReport:
    """Words that more than one relation's expansion produced.

    Accepts ``{relation: CandidateSet or word list}`` or a sequence of
    candidate sets for a single language.
    """
    if isinstance(candidate_sets, Mapping):
        items = [(Relation.parse(r), cs) for r, cs in candidate_sets.items()]
    else:
        items = [(cs.spec.relation, cs) for cs in candidate_sets]
    if len(items) < 2:
        raise ValueError("overlap detection needs at least 2 candidate sets")
    relations = [r for r, _ in items]
    if len(set(relations)) != len(relations):
        raise ValueError("each relation may appear only once")
    languages = {cs.spec.language for _, cs in items if isinstance(cs, CandidateSet)}
    if len(languages) > 1:
        raise ValueError("candidate sets span more than one language")

    found: dict[str, set[Relation]] = {}
    for rel, cs in items:
        words = cs.words if isinstance(cs, CandidateSet) else cs
        for w in set(words):
            found.setdefault(w, set()).add(rel)
    order = {r: i for i, r in enumerate(Relation)}
    entries = [
        (w, tuple(sorted(rels, key=order.__getitem__)))
        for w, rels in found.items()
        if len(rels) >= 2
    ]
    entries.sort(key=lambda e: (-len(e[1]), e[0]))
    return OverlapReport(tuple(entries), languages.pop() if languages else None)


def _cell(scores, rel, lang):
    for s in scores:
        if s.relation == rel and s.language == lang:
            return s
    return None


def _markdown(scores, overlaps, clusters) -> str:
    out = ["# Relation extraction report", "", "## Precision per relation and language", ""]
    if not scores:
        out += ["No data.", ""]
    else:
        present = {s.relation for s in scores}
        cols = [(r, l) for r in TABLE_RELATIONS if r in present for l in TABLE_LANGUAGES]
        out.append("| | " + " | ".join(f"{r.value.lower()} {l.value.lower()}" for r, l in cols) + " |")
        out.append("|---|" + "---|" * len(cols))
        for label, fn in (("N", lambda s: str(s.n_extracted)), ("C", lambda s: str(s.n_correct)), ("P", lambda s: s.precision_text)):
            cells = [fn(c) if (c := _cell(scores, r, l)) else "-" for r, l in cols]
            out.append(f"| {label} | " + " | ".join(cells) + " |")
        out.append("")
        gaps = [s for s in scores if s.n_unjudged]
        if gaps:
            out.append("Unjudged candidates (counted in N, not in C): " + ", ".join(
                f"{s.relation.value.lower()}/{s.language.value.lower()} {s.n_unjudged}" for s in gaps))
            out.append("")

    out += ["## Words extracted for several relations", ""]
    entries = [(o.language, w, rels) for o in overlaps for w, rels in o.entries]
    if not entries:
        out += ["No data.", ""]
    else:
        out += ["| language | word | relations |", "|---|---|---|"]
        for lang, w, rels in entries:
            out.append(f"| {lang.value.lower() if lang else '-'} | {w} | {', '.join(r.value for r in rels)} |")
        out.append("")

    out += ["## Clusters", ""]
    if not clusters:
        out += ["No data.", ""]
    else:
        for key in sorted(clusters):
            out += [f"### {key}", ""]
            group = clusters[key]
            if not group:
                out += ["No clusters.", ""]
                continue
            for c in group:
                anchors = f" (seeds: {', '.join(c.anchor_seeds)})" if c.anchor_seeds else ""
                out.append(f"- {c.kind.value.lower()} {c.label}{anchors}: {', '.join(c.members)}")
            out.append("")
    return "\n".join(out)


def emit_report(
    scores: Sequence[RelationScore] = (),
    overlaps: OverlapReport | Sequence[OverlapReport] = (),
    clusters: Mapping[str, Sequence[Cluster]] | None = None,
    format: str = "markdown",
) -> str:
    """Render scores, overlaps and clusters as markdown or JSON text.

    ``clusters`` maps a label such as ``"cause/en"`` to that candidate
    set's clusters.
    """
    if isinstance(overlaps, OverlapReport):
        overlaps = [overlaps]
    clusters = clusters or {}
    fmt = format.lower()
    if fmt == "markdown":
        return _markdown(list(scores), list(overlaps), clusters)
    if fmt == "json":
        payload = {
            "schema": REPORT_SCHEMA,
            "scores": [s.as_dict() for s in scores],
            "overlaps": [o.as_dict() for o in overlaps],
            "clusters": {k: [c.as_dict() for c in v] for k, v in sorted(clusters.items())},
        }
        return json.dumps(payload, ensure_ascii=False, indent=1) + "\n"
    raise ValueError(f"unknown report format {format!r}")


def load_report(text: str):
    """Parse JSON produced by :func:`emit_report` back into objects."""
    data = json.loads(text)
    if data.get("schema") != REPORT_SCHEMA:
        raise TermexError("not a termex report")
    scores = [RelationScore.from_dict(d) for d in data["scores"]]
    overlaps = [OverlapReport.from_dict(d) for d in data["overlaps"]]
    clusters = {k: [Cluster.from_dict(c) for c in v] for k, v in data["clusters"].items()}
    return scores, overlaps, clusters
