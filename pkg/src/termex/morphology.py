"""Affix and stem clustering of extracted words.

Suffix and prefix clusters are found exhaustively: every affix up to
``max_affix_len`` characters shared by enough candidates forms a cluster,
and an affix is dropped when a longer affix of the same kind covers exactly
the same words (``-nic`` and ``-enic`` vanish behind ``-genic`` when no
other candidate ends in them).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence


class ClusterKind(str, Enum):
    SUFFIX = "SUFFIX"
    PREFIX = "PREFIX"
    DERIVATIONAL = "DERIVATIONAL"


@dataclass(frozen=True)
class Cluster:
    kind: ClusterKind
    affix: str
    anchor_seeds: tuple[str, ...]
    members: tuple[str, ...]

    @property
    def label(self) -> str:
        if self.kind is ClusterKind.SUFFIX:
            return f"-{self.affix}"
        if self.kind is ClusterKind.PREFIX:
            return f"{self.affix}-"
        return self.affix

    @property
    def corresponds_to_seeds(self) -> bool:
        return bool(self.anchor_seeds)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "affix": self.affix,
            "anchor_seeds": list(self.anchor_seeds),
            "members": list(self.members),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Cluster":
        return cls(ClusterKind(d["kind"]), d["affix"], tuple(d["anchor_seeds"]), tuple(d["members"]))


@dataclass(frozen=True)
class ClusterConfig:
    min_suffix_len: int = 3
    min_prefix_len: int = 3
    min_cluster_size: int = 2
    max_affix_len: int = 10
    min_stem_len: int = 4
    # inflectional slack allowed between a derived word and its source term
    stem_tolerance: int = 2
    term_lexicon: tuple[str, ...] | None = None

    def __post_init__(self):
        for name in ("min_suffix_len", "min_prefix_len", "min_cluster_size", "max_affix_len", "min_stem_len"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.stem_tolerance < 0:
            raise ValueError("stem_tolerance must be >= 0")


def _affix_clusters(candidates, seeds, config, kind):
    suffix = kind is ClusterKind.SUFFIX
    min_len = config.min_suffix_len if suffix else config.min_prefix_len
    words = sorted(set(w for w in candidates if w))
    groups: dict[str, list[str]] = {}
    for w in words:
        for n in range(min_len, min(config.max_affix_len, len(w)) + 1):
            groups.setdefault(w[-n:] if suffix else w[:n], []).append(w)

    out = []
    for affix, members in groups.items():
        if len(members) < config.min_cluster_size:
            continue
        n = len(affix)
        if n < config.max_affix_len and all(len(m) > n for m in members):
            # a one-character extension shared by every member covers the same set
            ext = {m[-n - 1] if suffix else m[n] for m in members}
            if len(ext) == 1:
                continue
        anchors = tuple(sorted(s for s in set(seeds) if (s.endswith(affix) if suffix else s.startswith(affix))))
        out.append(Cluster(kind, affix, anchors, tuple(members)))
    out.sort(key=lambda c: (-len(c.members), c.affix))
    return out


def suffix_clusters(candidates: Iterable[str], seeds: Iterable[str] = (), config: ClusterConfig = ClusterConfig()) -> list[Cluster]:
    """Clusters of candidates sharing a word-final string.

    ``anchor_seeds`` lists the seeds that end in the same string; an empty
    tuple marks a cluster that does not correspond to any seed.
    """
    return _affix_clusters(list(candidates), list(seeds), config, ClusterKind.SUFFIX)


def prefix_clusters(candidates: Iterable[str], seeds: Iterable[str] = (), config: ClusterConfig = ClusterConfig()) -> list[Cluster]:
    return _affix_clusters(list(candidates), list(seeds), config, ClusterKind.PREFIX)


def common_prefix_len(a: str, b: str) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def derivational_clusters(
    candidates: Iterable[str],
    term_lexicon: Iterable[str] | None = None,
    config: ClusterConfig = ClusterConfig(),
) -> list[Cluster]:
    """Group candidates under the lexicon term they appear derived from.

    A candidate matches a term when their common prefix is at least
    ``min_stem_len`` long and falls short of the whole term by no more than
    ``stem_tolerance`` characters (kavernožan < kaverna).  A single matched
    candidate is enough for a cluster.
    """
    terms = list(dict.fromkeys(term_lexicon if term_lexicon is not None else (config.term_lexicon or ())))
    if not terms:
        raise ValueError("derivational clustering needs a non-empty term lexicon")
    words = sorted(set(w for w in candidates if w))
    out = []
    for term in terms:
        members = tuple(
            w for w in words
            if (lcp := common_prefix_len(w, term)) >= config.min_stem_len and lcp >= len(term) - config.stem_tolerance
        )
        if members:
            out.append(Cluster(ClusterKind.DERIVATIONAL, term, (), members))
    out.sort(key=lambda c: (-len(c.members), c.affix))
    return out


def residual(candidates: Iterable[str], clusters: Iterable[Cluster]) -> list[str]:
    """Candidates that belong to no cluster, sorted."""
    clustered = set()
    for c in clusters:
        clustered.update(c.members)
    return sorted(set(w for w in candidates if w) - clustered)


def cluster_all(candidates: Sequence[str], seeds: Sequence[str] = (), config: ClusterConfig = ClusterConfig()) -> dict:
    """Suffix, prefix and (with a lexicon) derivational clusters plus the residue."""
    suffix = suffix_clusters(candidates, seeds, config)
    prefix = prefix_clusters(candidates, seeds, config)
    deriv = derivational_clusters(candidates, config.term_lexicon, config) if config.term_lexicon else []
    return {
        "suffix": suffix,
        "prefix": prefix,
        "derivational": deriv,
        "residual": residual(candidates, suffix + prefix + deriv),
    }


def clusters_to_json(result: dict) -> str:
    payload = {
        key: ([c.as_dict() for c in value] if key != "residual" else list(value))
        for key, value in result.items()
    }
    return json.dumps(payload, ensure_ascii=False, indent=1, sort_keys=True) + "\n"
