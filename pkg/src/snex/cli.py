"""Batch command-line driver.

Verbs: build-index, extract, pair, evaluate. Settings come from flags or
an optional key=value config file, flags winning. Exit codes: 0 success,
1 usage, 2 data error, 3 backend error.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .corpus import build_index, load_corpus_jsonl, load_index, save_index
from .errors import BackendError, ConfigError, DataError, UsageError
from .gateway import LiveJsonBackend, LiveJsonConfig, OfflineBackend, QueryCache
from .graph import (
    EXPORT_FORMATS,
    build_graph,
    evaluate,
    export_graph,
    graph_from_csv_edges,
    load_gold_csv,
)
from .methods import ALL_METHODS, MEASURE_KINDS, PATTERN, PLAIN, SimilarityMeasure
from .pipeline import (
    compute_matrices,
    gather_run,
    read_actors_file,
    render_report,
    round6,
    select_methods,
)
from .tokenize import DEFAULT_TOKENIZER, TokenizerConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_BACKEND = 3

_FORMAT_BY_SUFFIX = {
    ".graphml": "graphml",
    ".dot": "dot",
    ".gv": "dot",
    ".csv": "csv-edges",
    ".json": "json",
}

_CONFIG_KEYS = ("index", "live_config", "actors", "measure", "cap", "threshold",
                "channel", "methods", "graph", "graph_format", "report",
                "stopwords", "cache")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the contract here is exit 1."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="snex",
                     description="Extract a weighted social graph from "
                                 "search-engine evidence about actor names.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("build-index", help="index a JSONL corpus for offline search")
    p.add_argument("corpus", help="corpus file, one JSON document per line")
    p.add_argument("out", help="where to write the index")
    p.add_argument("--stopwords", help="file with one stopword per line")
    p.set_defaults(func=cmd_build_index)

    p = sub.add_parser("extract", help="score every actor pair and write graph + report")
    _add_run_flags(p)
    p.add_argument("--graph", help="graph output path")
    p.add_argument("--graph-format", dest="graph_format", choices=EXPORT_FORMATS,
                   help="override the format inferred from the graph path suffix")
    p.add_argument("--report", help="JSON report output path")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("pair", help="print the full method row for one actor pair")
    _add_run_flags(p)
    p.add_argument("actor_a", help="actor id from the actors file")
    p.add_argument("actor_b", help="actor id from the actors file")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("evaluate", help="score an extracted graph against gold edges")
    p.add_argument("--graph", required=True, help="csv-edges graph file")
    p.add_argument("--gold", required=True, help="gold csv with source,target header")
    p.add_argument("--threshold", type=float, default=0.0,
                   help="count edges with weight strictly above this (default 0)")
    p.add_argument("--sweep", help="comma-separated thresholds; one result row each")
    p.set_defaults(func=cmd_evaluate)

    return parser


def _add_run_flags(p):
    p.add_argument("--config", help="key=value settings file; flags win")
    p.add_argument("--index", help="offline backend: index file or corpus .jsonl")
    p.add_argument("--live-config", dest="live_config",
                   help="live backend: JSON adapter settings file")
    p.add_argument("--actors", help="tab-separated actors file")
    p.add_argument("--measure", choices=MEASURE_KINDS,
                   help="count similarity for the hit-count methods (default jaccard)")
    p.add_argument("--cap", type=int, help="snippets retrieved per query (default 10)")
    p.add_argument("--threshold", type=float, help="edge emission threshold (default 0)")
    p.add_argument("--channel", help="edge weight channel: a method id, mu, eta, "
                                     "or total (default total)")
    p.add_argument("--methods", help="comma-separated method subset for the report, "
                                     "or 'all'")
    p.add_argument("--stopwords", help="file with one stopword per line")
    p.add_argument("--cache", help="JSONL query cache path (created if missing)")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) is None:
            raise UsageError("a command is required (build-index, extract, pair, evaluate)")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BackendError as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


def cmd_build_index(args) -> int:
    _require_file(args.corpus, "corpus")
    tokenizer = _tokenizer_from_path(args.stopwords)
    documents = load_corpus_jsonl(args.corpus)
    index = build_index(documents, tokenizer)
    save_index(index, args.out)
    print(f"indexed {index.corpus_size} documents, "
          f"{len(index.postings)} distinct tokens -> {args.out}")
    return EXIT_OK


def cmd_extract(args) -> int:
    cfg = _resolve_run_config(args)
    if not cfg["graph"] or not cfg["report"]:
        raise UsageError("extract needs --graph and --report output paths")
    tokenizer, backend, actors, cache, measure, methods = _prepare_run(cfg)
    if len(actors) < 2:
        raise UsageError(f"extract needs at least 2 actors, found {len(actors)}")

    run = gather_run(backend, actors, cap=cfg["cap"],
                     tokenizer_config=tokenizer, cache=cache)
    matrices = compute_matrices(run, measure)
    graph = build_graph(actors, matrices, cfg["channel"], cfg["threshold"])
    fmt = cfg["graph_format"] or _format_from_path(cfg["graph"])
    cfg["graph_format"] = fmt
    Path(cfg["graph"]).write_bytes(export_graph(graph, fmt))
    report = render_report(run, matrices, _config_echo(cfg), methods)
    Path(cfg["report"]).write_text(report, encoding="utf-8")
    print(f"scored {len(matrices)} pairs over {len(actors)} actors; "
          f"{len(graph.edges)} edges above threshold {cfg['threshold']:g}")
    if run.failures:
        print(f"{len(run.failures)} pair(s) failed; see the report error markers",
              file=sys.stderr)
        return EXIT_BACKEND
    return EXIT_OK


def cmd_pair(args) -> int:
    cfg = _resolve_run_config(args)
    tokenizer, backend, actors, cache, measure, _ = _prepare_run(cfg)
    by_id = {a.id: a for a in actors}
    missing = [i for i in (args.actor_a, args.actor_b) if i not in by_id]
    if missing:
        raise UsageError(f"unknown actor id(s): {', '.join(missing)}")
    if args.actor_a == args.actor_b:
        raise UsageError("pair needs two distinct actors")
    pair_actors = [by_id[args.actor_a], by_id[args.actor_b]]

    run = gather_run(backend, pair_actors, cap=cfg["cap"],
                     tokenizer_config=tokenizer, cache=cache)
    if run.failures:
        key, message = next(iter(run.failures.items()))
        print(f"backend error for pair {key[0]} -- {key[1]}: {message}",
              file=sys.stderr)
        return EXIT_BACKEND
    matrices = compute_matrices(run, measure)
    ((_, matrix),) = matrices.items()
    ((_, evidence),) = run.evidences.items()

    a, b = evidence.actor_a, evidence.actor_b
    print(f"pair: {a.id} ({a.display_name}) -- {b.id} ({b.display_name})")
    for strategy in (PLAIN, PATTERN):
        ev = evidence.for_strategy(strategy)
        print(f"counts {strategy:<7}:"
              f" a={ev.occ_a.hit_count} b={ev.occ_b.hit_count} ab={ev.cooc.hit_count}")
    for name in ALL_METHODS:
        print(f"{name:<8}{round6(matrix.sr[name]):g}")
    print(f"{'mu':<8}{round6(matrix.mu):g}")
    print(f"{'eta':<8}{round6(matrix.eta):g}")
    print(f"{'mu+eta':<8}{round6(matrix.total):g}")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    _require_file(args.graph, "graph")
    _require_file(args.gold, "gold")
    graph = graph_from_csv_edges(Path(args.graph).read_bytes())
    gold = load_gold_csv(args.gold)
    if not gold:
        print("warning: gold edge set is empty; recall is reported as 0",
              file=sys.stderr)
    thresholds = [args.threshold]
    if args.sweep:
        try:
            thresholds = [float(t) for t in args.sweep.split(",") if t.strip()]
        except ValueError:
            raise UsageError(f"bad sweep list {args.sweep!r}; expected numbers")
        if not thresholds:
            raise UsageError("sweep list is empty")
    for t in thresholds:
        rep = evaluate(graph, gold, threshold=t)
        print(f"threshold={t:g} precision={round6(rep.precision):g} "
              f"recall={round6(rep.recall):g} f={round6(rep.f_measure):g} "
              f"tp={rep.true_positives} fp={rep.false_positives} "
              f"fn={rep.false_negatives}")
    return EXIT_OK


def load_config_file(path) -> dict[str, str]:
    """Flat key=value settings, # comments, optional quotes around values."""
    _require_file(path, "config")
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path} line {lineno}: expected key = value")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            value = value.strip()
            if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
                value = value[1:-1]
            if key not in _CONFIG_KEYS:
                raise UsageError(f"{path} line {lineno}: unknown key {key!r}")
            out[key] = value
    return out


def _resolve_run_config(args) -> dict:
    file_cfg = load_config_file(args.config) if args.config else {}

    def pick(key, default=None, coerce=None):
        value = getattr(args, key, None)
        if value is None and key in file_cfg:
            value = file_cfg[key]
            if coerce is not None:
                try:
                    value = coerce(value)
                except ValueError:
                    raise UsageError(f"config key {key}: bad value {value!r}")
        return default if value is None else value

    cfg = {
        "index": pick("index"),
        "live_config": pick("live_config"),
        "actors": pick("actors"),
        "measure": pick("measure", "jaccard"),
        "cap": pick("cap", 10, int),
        "threshold": pick("threshold", 0.0, float),
        "channel": pick("channel", "total"),
        "methods": pick("methods"),
        "graph": pick("graph"),
        "graph_format": pick("graph_format"),
        "report": pick("report"),
        "stopwords": pick("stopwords"),
        "cache": pick("cache"),
    }
    if cfg["measure"] not in MEASURE_KINDS:
        raise UsageError(f"unknown measure {cfg['measure']!r}; "
                         f"choose from {', '.join(MEASURE_KINDS)}")
    if cfg["cap"] < 1:
        raise UsageError("snippet cap must be >= 1")
    if cfg["threshold"] < 0:
        raise UsageError("threshold must be >= 0")
    if not cfg["actors"]:
        raise UsageError("an actors file is required (--actors)")
    if bool(cfg["index"]) == bool(cfg["live_config"]):
        raise UsageError("choose exactly one backend: --index or --live-config")
    for key in ("index", "live_config", "actors", "stopwords"):
        if cfg[key]:
            _require_file(cfg[key], key)
    return cfg


def _prepare_run(cfg):
    tokenizer = _tokenizer_from_path(cfg["stopwords"])
    backend = _backend_from(cfg, tokenizer)
    actors = read_actors_file(cfg["actors"])
    cache = QueryCache(cfg["cache"]) if cfg["cache"] else None
    measure = _measure_from(cfg, backend)
    methods = select_methods(cfg["methods"])
    return tokenizer, backend, actors, cache, measure, methods


def _backend_from(cfg, tokenizer):
    if cfg["index"]:
        path = cfg["index"]
        if path.endswith(".jsonl"):
            index = build_index(load_corpus_jsonl(path), tokenizer)
        else:
            index = load_index(path)
        return OfflineBackend(index)
    raw = Path(cfg["live_config"]).read_text(encoding="utf-8")
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DataError(f"{cfg['live_config']}: malformed JSON: {exc.msg}")
    known = {f.name for f in dataclasses.fields(LiveJsonConfig)}
    unknown = sorted(set(obj) - known)
    if unknown:
        raise DataError(f"{cfg['live_config']}: unknown keys: {', '.join(unknown)}")
    required = ("endpoint", "hit_count_path", "snippets_path")
    missing = sorted(k for k in required if k not in obj)
    if missing:
        raise DataError(f"{cfg['live_config']}: missing keys: {', '.join(missing)}")
    return LiveJsonBackend(LiveJsonConfig(**obj))


def _measure_from(cfg, backend) -> SimilarityMeasure:
    kind = cfg["measure"]
    if kind == "npmi":
        if not backend.corpus_size_known:
            raise ConfigError("npmi needs a backend with a known corpus size; "
                              "the live adapter does not have one")
        return SimilarityMeasure(kind=kind, corpus_size=backend.corpus_size)
    return SimilarityMeasure(kind=kind)


def _tokenizer_from_path(path) -> TokenizerConfig:
    if not path:
        return DEFAULT_TOKENIZER
    _require_file(path, "stopwords")
    with open(path, encoding="utf-8") as fh:
        words = [line.strip() for line in fh if line.strip()]
    return TokenizerConfig.with_stopwords(words)


def _format_from_path(path: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix not in _FORMAT_BY_SUFFIX:
        raise ConfigError(f"cannot infer a graph format from {path!r}; "
                          f"suffixes: {', '.join(sorted(_FORMAT_BY_SUFFIX))}, "
                          f"or pass --graph-format ({', '.join(EXPORT_FORMATS)})")
    return _FORMAT_BY_SUFFIX[suffix]


def _config_echo(cfg) -> dict:
    echo = dict(cfg)
    echo["methods"] = cfg["methods"] or "all"
    return echo


def _require_file(path, what):
    if not Path(path).is_file():
        raise UsageError(f"{what} file not found: {path}")


if __name__ == "__main__":
    sys.exit(main())
