"""Command-line entry point: ``termex <subcommand> ...``.

Exit status is 0 on success, 1 on usage or configuration errors and 2 on
data errors.  Diagnostics go to standard error.
"""
from __future__ import annotations

import argparse
import glob
import json
import logging
import os
import re
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .corpus import Language, corpus_stats, ingest, ingest_dir, tokenize
from .embedding import TrainConfig, load_vectors, save_vectors, train
from .errors import ConfigError, TermexError
from .evaluation import cross_relation_overlap, emit_report, load_gold, score
from .expansion import CandidateSet, Relation, expand, find_spec, load_seed_file
from .morphology import ClusterConfig, cluster_all, clusters_to_json
from .synthfix import SynthSpec, generate, gold_lines, seed_entries, write_corpus, write_manifest
from .vecindex import build_index, nearest

log = logging.getLogger("termex")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------- config

DEFAULTS: dict[str, Any] = {
    "language": "EN",
    "corpus": None,
    "seeds": None,
    "relations": None,
    "gold": None,
    "terms": None,
    "out": "termex-run",
    "train": TrainConfig().as_dict(),
    "expand": {"k": 100, "subset_min": 2, "subset_max": 10},
    "cluster": {
        "min_suffix_len": 3, "min_prefix_len": 3, "min_cluster_size": 2,
        "max_affix_len": 10, "min_stem_len": 4, "stem_tolerance": 2,
    },
    "synth": None,
}
_PATH_KEYS = ("corpus", "seeds", "gold", "terms", "out")


def _merge(base: dict, over: dict, where: str = "") -> dict:
    out = dict(base)
    for key, value in over.items():
        if key not in base:
            raise ConfigError(f"unknown config key {where}{key!r}")
        if isinstance(base[key], dict) and isinstance(value, dict) and key != "synth":
            out[key] = _merge(base[key], value, f"{where}{key}.")
        else:
            out[key] = value
    return out


@dataclass
class RunConfig:
    """Merged view of defaults, config file and command-line flags."""

    language: Language
    train: TrainConfig
    k: int
    subset_min: int
    subset_max: int
    cluster: ClusterConfig
    out: Path
    corpus: Path | None = None
    seeds: Path | None = None
    relations: list[Relation] | None = None
    gold: Path | None = None
    terms: Path | None = None
    synth: dict | None = None
    raw: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, file_data: dict | None = None, flags: dict | None = None, base_dir: Path | None = None) -> "RunConfig":
        data = _merge(DEFAULTS, file_data or {})
        if base_dir is not None:
            # relative paths in a config file are relative to that file
            for key in _PATH_KEYS:
                if data.get(key) and not Path(data[key]).is_absolute() and key in (file_data or {}):
                    data[key] = str(base_dir / data[key])
        data = _merge(data, _nest_flags(flags or {}))
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        try:
            train_cfg = TrainConfig.from_dict(data["train"])
            train_cfg = train_cfg.updated(workers=_cap_workers(train_cfg.workers)).validate()
            cluster_cfg = ClusterConfig(**data["cluster"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        exp = data["expand"]
        k, smin, smax = int(exp["k"]), int(exp["subset_min"]), int(exp["subset_max"])
        if k < 1 or smin < 1 or smax < smin:
            raise ConfigError("need k >= 1 and 1 <= subset_min <= subset_max")
        rels = data.get("relations")
        return cls(
            language=Language.parse(data["language"]),
            train=train_cfg,
            k=k,
            subset_min=smin,
            subset_max=smax,
            cluster=cluster_cfg,
            out=Path(data["out"]),
            corpus=Path(data["corpus"]) if data.get("corpus") else None,
            seeds=Path(data["seeds"]) if data.get("seeds") else None,
            relations=[Relation.parse(r) for r in rels] if rels else None,
            gold=Path(data["gold"]) if data.get("gold") else None,
            terms=Path(data["terms"]) if data.get("terms") else None,
            synth=data.get("synth"),
            raw=data,
        )


_TRAIN_FLAGS = {f.name for f in fields(TrainConfig)}
_EXPAND_FLAGS = {"k", "subset_min", "subset_max"}
_CLUSTER_FLAGS = set(DEFAULTS["cluster"])


def _nest_flags(flags: dict) -> dict:
    out: dict[str, Any] = {}
    for key, value in flags.items():
        if value is None:
            continue
        if key in _TRAIN_FLAGS:
            out.setdefault("train", {})[key] = value
        elif key in _EXPAND_FLAGS:
            out.setdefault("expand", {})[key] = value
        elif key in _CLUSTER_FLAGS:
            out.setdefault("cluster", {})[key] = value
        else:
            out[key] = value
    return out


def _cap_workers(workers: int) -> int:
    env = os.environ.get("TERMEX_THREADS")
    if env is None or env.strip() == "":
        return workers
    try:
        cap = int(env)
    except ValueError:
        raise ConfigError(f"TERMEX_THREADS must be an integer, got {env!r}") from None
    if cap < 0:
        raise ConfigError("TERMEX_THREADS must be >= 0")
    return min(workers, cap)


def _read_config(path: str | None) -> tuple[dict, Path | None]:
    if not path:
        return {}, None
    p = Path(path)
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{p}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{p}: config must be a JSON object")
    return data, p.parent


def _flags(args: argparse.Namespace, names: Sequence[str]) -> dict:
    return {n: getattr(args, n, None) for n in names}


def _run_config(args, names) -> RunConfig:
    file_data, base = _read_config(getattr(args, "config", None))
    return RunConfig.build(file_data, _flags(args, names), base)


# ---------------------------------------------------------------- helpers

def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def _load_corpus(paths: Sequence[str], language) -> Any:
    corpus = None
    for p in paths:
        part = ingest_dir(p, language) if Path(p).is_dir() else ingest([p], language)
        corpus = part if corpus is None else corpus + part
    return tokenize(corpus)


def _read_candidates(path: Path) -> CandidateSet:
    try:
        return CandidateSet.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise TermexError(f"cannot read candidates {path}: {exc}") from exc


def _expand_glob(pattern: str) -> list[Path]:
    hits = sorted(glob.glob(pattern))
    if not hits:
        if Path(pattern).exists():
            return [Path(pattern)]
        raise TermexError(f"no files match {pattern!r}")
    return [Path(h) for h in hits]


_NAME_PARTS = re.compile(r"[^A-Za-z]+")


def relation_language_from_name(path: Path) -> tuple[Relation, Language]:
    """Read relation and language from a file name such as ``cause_en.tsv``."""
    rel = lang = None
    for part in _NAME_PARTS.split(path.stem.upper()):
        if part in Relation.__members__:
            rel = Relation[part]
        elif part in Language.__members__:
            lang = Language[part]
    if rel is None or lang is None:
        raise TermexError(f"{path.name}: file name must name a relation and a language, e.g. cause_en.tsv")
    return rel, lang


def _lexicon(path: Path | None) -> tuple[str, ...] | None:
    if path is None:
        return None
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise TermexError(f"cannot read term lexicon {path}: {exc}") from exc
    terms = tuple(w.strip() for w in lines if w.strip() and not w.startswith("#"))
    if not terms:
        raise TermexError(f"{path}: term lexicon is empty")
    return terms


def build_report(candidate_sets: Sequence[CandidateSet], gold_paths: dict, cluster_results: dict) -> tuple[str, str]:
    scores = []
    for cs in candidate_sets:
        key = (cs.spec.relation, cs.spec.language)
        if key in gold_paths:
            scores.append(score(cs, load_gold(gold_paths[key], *key)))
    overlaps = []
    for lang in Language:
        sets = [cs for cs in candidate_sets if cs.spec.language == lang]
        if len(sets) >= 2:
            overlaps.append(cross_relation_overlap(sets))
    clusters = {
        key: res["suffix"] + res["prefix"] + res["derivational"]
        for key, res in cluster_results.items()
    }
    return emit_report(scores, overlaps, clusters, "markdown"), emit_report(scores, overlaps, clusters, "json")


def _gold_dir_map(gold: Path | None) -> dict:
    if gold is None:
        return {}
    paths = sorted(gold.glob("*.tsv")) if gold.is_dir() else [gold]
    return {relation_language_from_name(p): p for p in paths}


def _set_key(cs: CandidateSet) -> str:
    return f"{cs.spec.relation.value.lower()}_{cs.spec.language.value.lower()}"


# ---------------------------------------------------------------- commands

def cmd_stats(args) -> int:
    corpus = _load_corpus(args.paths, args.lang)
    stats = corpus_stats(corpus)
    if args.json:
        print(json.dumps(stats.as_dict(), indent=1))
    else:
        for key, value in stats.as_dict().items():
            print(f"{key:<10}{value:>12,}")
    return EXIT_OK


def cmd_train(args) -> int:
    cfg = _run_config(args, sorted(_TRAIN_FLAGS) + ["language"])
    corpus = _load_corpus(args.paths, cfg.language)
    model = train(corpus, cfg.train)
    save_vectors(model, args.out)
    log.info("wrote %d vectors of dim %d to %s", len(model.vocabulary), model.dim, args.out)
    return EXIT_OK


def cmd_neighbors(args) -> int:
    if args.k < 0:
        raise UsageError("--k must be >= 0")
    index = build_index(load_vectors(args.vectors))
    for word in args.words:
        if len(args.words) > 1:
            print(f"# {word}")
        for w, cos in nearest(index, word, args.k).neighbors:
            print(f"{w}\t{cos:.6f}")
    return EXIT_OK


def cmd_expand(args) -> int:
    cfg = _run_config(args, ["k", "subset_min", "subset_max", "language"])
    spec = find_spec(load_seed_file(args.seeds), args.relation, cfg.language)
    index = build_index(load_vectors(args.vectors))
    cs = expand(spec, index, cfg.k, cfg.subset_min, cfg.subset_max)
    if cs.missing_seeds:
        log.warning("seeds not in vectors: %s", ", ".join(cs.missing_seeds))
    text = json.dumps(cs.as_dict(), ensure_ascii=False, indent=1) + "\n"
    if args.out:
        _write_text(Path(args.out), text)
    else:
        sys.stdout.write(text)
    log.info("%s: %d candidates", _set_key(cs), len(cs))
    return EXIT_OK


def cmd_cluster(args) -> int:
    cfg = _run_config(args, sorted(_CLUSTER_FLAGS) + ["terms"])
    cs = _read_candidates(args.candidates)
    seeds = cs.spec.seeds
    if args.seeds:
        seeds = find_spec(load_seed_file(args.seeds), cs.spec.relation, cs.spec.language).seeds
    ccfg = ClusterConfig(**{**cfg.raw["cluster"], "term_lexicon": _lexicon(cfg.terms)})
    text = clusters_to_json(cluster_all(cs.words, seeds, ccfg))
    if args.out:
        _write_text(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    sets = [_read_candidates(p) for p in _expand_glob(args.candidates)]
    keys = [(cs.spec.relation, cs.spec.language) for cs in sets]
    if len(set(keys)) != len(keys):
        raise TermexError("several candidate files share a relation and language")
    gold_paths = {}
    if args.gold:
        for p in _expand_glob(args.gold):
            gold_paths[relation_language_from_name(p)] = p
    for key in keys:
        if key not in gold_paths:
            log.warning("no gold file for %s/%s", key[0].value.lower(), key[1].value.lower())
    md, js = build_report(sets, gold_paths, {})
    if args.out:
        _write_text(Path(args.out), md)
    else:
        sys.stdout.write(md)
    if args.json:
        _write_text(Path(args.json), js)
    return EXIT_OK


def write_synth(spec: SynthSpec, out_dir: Path, manifest_path: Path,
                seeds_out: Path | None = None, gold_dir: Path | None = None, n_seeds: int = 5):
    corpus, manifest = generate(spec)
    write_corpus(corpus, out_dir)
    write_manifest(manifest, manifest_path)
    if seeds_out is not None:
        entries = seed_entries(manifest, n_seeds, spec.language)
        _write_text(seeds_out, json.dumps(entries, ensure_ascii=False, indent=1) + "\n")
    if gold_dir is not None:
        for fam in manifest.families:
            name = f"{fam['relation'].lower()}_{spec.language.lower()}.tsv"
            _write_text(gold_dir / name, "\n".join(gold_lines(manifest, fam["relation"])) + "\n")
    return corpus, manifest


def cmd_synth(args) -> int:
    try:
        data = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise TermexError(f"cannot read synthetic spec {args.spec}: {exc}") from exc
    spec = SynthSpec.from_dict(data)
    write_synth(spec, Path(args.out), Path(args.manifest),
                Path(args.seeds_out) if args.seeds_out else None,
                Path(args.gold_dir) if args.gold_dir else None, args.n_seeds)
    return EXIT_OK


def run_pipeline(cfg: RunConfig) -> dict[str, Path]:
    """train -> vectors -> index -> expand -> cluster -> evaluate, all under ``cfg.out``."""
    out = cfg.out
    out.mkdir(parents=True, exist_ok=True)
    corpus_dir, seeds_path, gold = cfg.corpus, cfg.seeds, cfg.gold
    if cfg.synth is not None:
        synth = dict(cfg.synth)
        n_seeds = int(synth.pop("n_seeds", 5))
        spec = SynthSpec.from_dict(synth.get("spec", synth))
        corpus_dir, seeds_path, gold = out / "synth" / "corpus", out / "synth" / "seeds.json", out / "synth" / "gold"
        write_synth(spec, corpus_dir, out / "synth" / "manifest.json", seeds_path, gold, n_seeds)
    if corpus_dir is None or seeds_path is None:
        raise ConfigError("pipeline needs 'corpus' and 'seeds' (or a 'synth' section)")

    corpus = _load_corpus([str(corpus_dir)], cfg.language)
    model = train(corpus, cfg.train)
    vec_path = out / "vectors.txt"
    save_vectors(model, vec_path)
    index = build_index(load_vectors(vec_path))

    specs = [s for s in load_seed_file(seeds_path) if s.language == cfg.language]
    if cfg.relations:
        specs = [find_spec(specs, r, cfg.language) for r in cfg.relations]
    if not specs:
        raise TermexError(f"seed file has no {cfg.language.value.lower()} entries")

    ccfg = ClusterConfig(**{**cfg.raw["cluster"], "term_lexicon": _lexicon(cfg.terms)})
    sets, cluster_results = [], {}
    for spec in specs:
        cs = expand(spec, index, cfg.k, cfg.subset_min, cfg.subset_max)
        key = _set_key(cs)
        _write_text(out / "candidates" / f"{key}.json", json.dumps(cs.as_dict(), ensure_ascii=False, indent=1) + "\n")
        result = cluster_all(cs.words, spec.seeds, ccfg)
        _write_text(out / "clusters" / f"{key}.json", clusters_to_json(result))
        sets.append(cs)
        cluster_results[key] = result
        log.info("%s: %d candidates", key, len(cs))

    md, js = build_report(sets, _gold_dir_map(gold), cluster_results)
    _write_text(out / "report.md", md)
    _write_text(out / "report.json", js)
    return {"vectors": vec_path, "report": out / "report.md", "report_json": out / "report.json"}


def cmd_pipeline(args) -> int:
    names = sorted(_TRAIN_FLAGS | _EXPAND_FLAGS | _CLUSTER_FLAGS) + [
        "language", "corpus", "seeds", "gold", "terms", "out", "relations"]
    cfg = _run_config(args, names)
    paths = run_pipeline(cfg)
    print(paths["report"])
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _add_train_flags(p):
    g = p.add_argument_group("training")
    g.add_argument("--dim", type=int)
    g.add_argument("--window", type=int)
    g.add_argument("--epochs", type=int)
    g.add_argument("--negatives", type=int)
    g.add_argument("--min-count", dest="min_count", type=int)
    g.add_argument("--ngram-min", dest="ngram_min", type=int)
    g.add_argument("--ngram-max", dest="ngram_max", type=int)
    g.add_argument("--buckets", type=int)
    g.add_argument("--lr", dest="learning_rate", type=float)
    g.add_argument("--subsample", dest="subsample_t", type=float)
    g.add_argument("--seed", dest="rng_seed", type=int)
    g.add_argument("--workers", type=int, help="0 = deterministic single worker")


def _add_expand_flags(p):
    p.add_argument("--k", type=int, help="neighbours per seed (default 100)")
    p.add_argument("--subset-min", dest="subset_min", type=int)
    p.add_argument("--subset-max", dest="subset_max", type=int)


def _add_cluster_flags(p):
    g = p.add_argument_group("clustering")
    g.add_argument("--min-suffix-len", dest="min_suffix_len", type=int)
    g.add_argument("--min-prefix-len", dest="min_prefix_len", type=int)
    g.add_argument("--min-cluster-size", dest="min_cluster_size", type=int)
    g.add_argument("--max-affix-len", dest="max_affix_len", type=int)
    g.add_argument("--min-stem-len", dest="min_stem_len", type=int)
    g.add_argument("--stem-tolerance", dest="stem_tolerance", type=int)
    g.add_argument("--terms", help="term lexicon, one term per line")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="termex", description="Relation-specific terminology extraction from word embeddings.")
    parser.add_argument("--version", action="version", version=f"termex {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("stats", help="corpus token, word, sentence and document counts")
    p.add_argument("--lang", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("paths", nargs="+", help="directories of .txt files or single files")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("train", help="train subword skip-gram vectors")
    p.add_argument("--config")
    p.add_argument("--lang", dest="language")
    p.add_argument("--out", required=True, help="vector file to write")
    _add_train_flags(p)
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("neighbors", help="print nearest neighbours by cosine")
    p.add_argument("--vectors", required=True)
    p.add_argument("--k", type=int, default=100)
    p.add_argument("words", nargs="+")
    p.set_defaults(func=cmd_neighbors)

    p = sub.add_parser("expand", help="expand one relation's seeds")
    p.add_argument("--config")
    p.add_argument("--vectors", required=True)
    p.add_argument("--seeds", required=True)
    p.add_argument("--relation", required=True)
    p.add_argument("--lang", dest="language")
    _add_expand_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("cluster", help="suffix, prefix and derivational clusters of candidates")
    p.add_argument("--config")
    p.add_argument("--candidates", required=True)
    p.add_argument("--seeds")
    _add_cluster_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("evaluate", help="score candidates against gold judgments")
    p.add_argument("--candidates", required=True, help="file or glob")
    p.add_argument("--gold", help="file or glob; names like cause_en.tsv")
    p.add_argument("--out", help="markdown report (default: stdout)")
    p.add_argument("--json", help="JSON report path")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", help="generate a synthetic corpus with planted suffix families")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True, help="corpus directory")
    p.add_argument("--manifest", required=True)
    p.add_argument("--seeds-out", help="also write a seed file")
    p.add_argument("--gold-dir", help="also write one gold TSV per family")
    p.add_argument("--n-seeds", type=int, default=5)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("pipeline", help="train, expand, cluster and evaluate from one config")
    p.add_argument("--config")
    p.add_argument("--lang", dest="language")
    p.add_argument("--corpus")
    p.add_argument("--seeds")
    p.add_argument("--gold")
    p.add_argument("--out")
    p.add_argument("--relations", nargs="+")
    _add_train_flags(p)
    _add_expand_flags(p)
    _add_cluster_flags(p)
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help / --version
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="termex: %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"termex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TermexError as exc:
        print(f"termex: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"termex: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
