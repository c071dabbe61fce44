"""Run orchestration: actors file in, evidence, matrices, and report out.

Evidence gathering is frugal by construction: each actor's occurrence is
queried once per strategy and each pair's co-occurrence once per
strategy, so a run over k actors costs exactly 2k + 2*C(k,2) backend
queries. Failed pairs are recorded and skipped rather than aborting the
run; the report carries an error marker for them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .bow import BowVector, bow_from_snippets
from .corpus import Query, QueryResult
from .errors import BackendError, DataError, UsageError
from .gateway import QueryCache, SearchBackend, search_cached
from .graph import Actor
from .methods import (
    ALL_METHODS,
    PATTERN,
    PLAIN,
    STRATEGIES,
    MethodMatrix,
    PairEvidence,
    RunContext,
    SimilarityMeasure,
    StrategyEvidence,
    method_matrix,
)
from .tokenize import DEFAULT_TOKENIZER, TokenizerConfig
from .urlsim import UrlLayers, parse_url
from .errors import UrlParseError


@dataclass
class ActorEvidence:
    result: QueryResult
    bow: BowVector
    urls: tuple[UrlLayers, ...]


@dataclass
class RunEvidence:
    actors: list[Actor]
    evidences: dict[tuple, PairEvidence] = field(default_factory=dict)
    failures: dict[tuple, str] = field(default_factory=dict)
    run_context: RunContext = field(default_factory=RunContext)


def actor_query(actor: Actor, strategy: str) -> Query:
    if strategy == PLAIN:
        return Query(terms=(actor.display_name,), quoted=False)
    return Query(terms=(actor.pattern_name,), quoted=True)


def pair_query(a: Actor, b: Actor, strategy: str) -> Query:
    if strategy == PLAIN:
        return Query(terms=(a.display_name, b.display_name), quoted=False)
    return Query(terms=(a.pattern_name, b.pattern_name), quoted=True)


def snippet_urls(result: QueryResult) -> tuple[UrlLayers, ...]:
    """Parse the snippet URLs, dropping any a live engine mangled."""
    urls = []
    for snippet in result.snippets:
        try:
            urls.append(parse_url(snippet.url))
        except UrlParseError:
            continue
    return tuple(urls)


def _actor_evidence(result: QueryResult, config: TokenizerConfig) -> ActorEvidence:
    return ActorEvidence(result=result,
                         bow=bow_from_snippets(result.snippets, config),
                         urls=snippet_urls(result))


def gather_run(backend: SearchBackend, actors, cap: int = 10,
               tokenizer_config: TokenizerConfig = DEFAULT_TOKENIZER,
               cache: QueryCache | None = None) -> RunEvidence:
    """Collect evidence for every unordered actor pair, both strategies.

    Occurrence results are shared across all pairs an actor appears in,
    which both meets the query budget and makes every pair's matrix
    independent of pair enumeration order.
    """
    actors = sorted(actors, key=lambda a: a.id)
    occurrence: dict[tuple[str, str], ActorEvidence] = {}
    occurrence_errors: dict[tuple[str, str], str] = {}
    for strategy in STRATEGIES:
        for actor in actors:
            try:
                result = search_cached(backend, cache, actor_query(actor, strategy), cap)
            except BackendError as exc:
                occurrence_errors[(strategy, actor.id)] = str(exc)
                continue
            occurrence[(strategy, actor.id)] = _actor_evidence(result, tokenizer_config)

    run = RunEvidence(actors=actors)
    for i, a in enumerate(actors):
        for b in actors[i + 1:]:
            key = (a.id, b.id)
            per_strategy: dict[str, StrategyEvidence] = {}
            error = None
            for strategy in STRATEGIES:
                for actor in (a, b):
                    if (strategy, actor.id) in occurrence_errors:
                        error = occurrence_errors[(strategy, actor.id)]
                        break
                if error:
                    break
                try:
                    cooc = search_cached(backend, cache, pair_query(a, b, strategy), cap)
                except BackendError as exc:
                    error = str(exc)
                    break
                per_strategy[strategy] = StrategyEvidence(
                    occ_a=occurrence[(strategy, a.id)].result,
                    occ_b=occurrence[(strategy, b.id)].result,
                    cooc=cooc,
                    bow_a=occurrence[(strategy, a.id)].bow,
                    bow_b=occurrence[(strategy, b.id)].bow,
                    bow_c=bow_from_snippets(cooc.snippets, tokenizer_config),
                    urls_a=occurrence[(strategy, a.id)].urls,
                    urls_b=occurrence[(strategy, b.id)].urls,
                    urls_c=snippet_urls(cooc),
                )
            if error is not None:
                run.failures[key] = error
            else:
                run.evidences[key] = PairEvidence(
                    actor_a=a, actor_b=b,
                    plain=per_strategy[PLAIN], pattern=per_strategy[PATTERN])
    run.run_context = RunContext.from_evidence(run.evidences.values())
    return run


def compute_matrices(run: RunEvidence,
                     measure: SimilarityMeasure) -> dict[tuple, MethodMatrix]:
    """Score every gathered pair. The run context is complete by the time
    this is called, so the mean-normalized measure is final."""
    return {key: method_matrix(evidence, measure, run.run_context)
            for key, evidence in run.evidences.items()}


def round6(x: float) -> float:
    """Fix numbers at 6 significant digits so output bytes are stable."""
    return float(format(x, ".6g"))


def _pair_counts(evidence: PairEvidence) -> dict:
    counts = {}
    for strategy in STRATEGIES:
        ev = evidence.for_strategy(strategy)
        counts[strategy] = {"a": ev.occ_a.hit_count, "b": ev.occ_b.hit_count,
                            "ab": ev.cooc.hit_count}
    return counts


def render_report(run: RunEvidence, matrices: dict[tuple, MethodMatrix],
                  config_echo: dict, methods=None) -> str:
    """Machine-readable run report: a config echo plus one object per
    pair, lexicographic by actor ids, with stable JSON formatting."""
    selected = list(ALL_METHODS) if methods is None else list(methods)
    pairs = []
    for key in sorted(set(run.evidences) | set(run.failures)):
        entry = {"a": key[0], "b": key[1]}
        if key in run.failures:
            entry["error"] = run.failures[key]
        else:
            matrix = matrices[key]
            entry["sr"] = {name: round6(matrix.sr[name]) for name in selected}
            entry["mu"] = round6(matrix.mu)
            entry["eta"] = round6(matrix.eta)
            entry["total"] = round6(matrix.total)
            entry["counts"] = _pair_counts(run.evidences[key])
        pairs.append(entry)
    report = {"config": config_echo, "pairs": pairs}
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def read_actors_file(path) -> list[Actor]:
    """Actors interchange format: one per line, tab-separated id and
    display name, with an optional third field overriding the
    exact-phrase form."""
    actors = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) < 2 or not fields[0].strip() or not fields[1].strip():
                raise DataError(f"{path} line {lineno}: expected "
                                "id<TAB>display name[<TAB>pattern]")
            actor_id = fields[0].strip()
            if actor_id in seen:
                raise DataError(f"{path} line {lineno}: duplicate actor id {actor_id!r}")
            seen.add(actor_id)
            pattern = fields[2].strip() if len(fields) > 2 else ""
            actors.append(Actor(id=actor_id, display_name=fields[1].strip(),
                                pattern_name=pattern))
    return actors


def select_methods(spec: str | None) -> list[str] | None:
    """Parse a methods selection like "BSM,PSM" or "all" (None = all).
    Only filters report output; the matrix always carries all twelve."""
    if spec is None or spec.strip().lower() == "all":
        return None
    names = [name.strip() for name in spec.split(",") if name.strip()]
    unknown = [name for name in names if name not in ALL_METHODS]
    if unknown:
        raise UsageError(f"unknown methods: {', '.join(unknown)}; "
                         f"valid: {', '.join(ALL_METHODS)}")
    if not names:
        raise UsageError("methods selection is empty")
    return names
