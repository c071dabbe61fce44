"""The twelve strength-relation measures and their integration.

Every measure scores one unordered actor pair in [0, 1] from nothing but
search-observable evidence, under two query strategies: plain names and
exact-phrase ("pattern") names. Six measure families times two
strategies gives the twelve values; their per-strategy means (`mu` for
plain, `eta` for pattern) and the sum `mu + eta` integrate them.

Families, by the evidence they consume:
  BSM / PSM      hit counts of the two names and their conjunction
  bUSM / pUSM    layer similarity between the two occurrence URL lists
  cbUSM / cpUSM  mean URL depth of the co-occurrence list vs its hit count
  oDSM / poDSM   word-set overlap of the two occurrence bags of words
  bDSM / pbDSM   co-occurrence words that the occurrence bags also carry
  cDSM / pcDSM   co-occurrence word mass against the run-wide mean mass
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .bow import BowVector, bow_support
from .corpus import QueryResult
from .errors import ConfigError
from .urlsim import UrlLayers, url_set_similarity

if TYPE_CHECKING:
    from .graph import Actor

PLAIN = "plain"
PATTERN = "pattern"
STRATEGIES = (PLAIN, PATTERN)

PLAIN_METHODS = ("BSM", "bUSM", "cbUSM", "bDSM", "oDSM", "cDSM")
PATTERN_METHODS = ("PSM", "pUSM", "cpUSM", "pbDSM", "poDSM", "pcDSM")
ALL_METHODS = PLAIN_METHODS + PATTERN_METHODS

MEASURE_KINDS = ("jaccard", "dice", "overlap", "cosine", "npmi")

DSM_VARIANTS = ("oDSM", "bDSM", "cDSM")


@dataclass(frozen=True)
class SimilarityMeasure:
    """Which count-similarity formula to use; npmi also needs the corpus
    size to turn counts into probabilities."""

    kind: str = "jaccard"
    corpus_size: int | None = None

    def __post_init__(self):
        if self.kind not in MEASURE_KINDS:
            raise ConfigError(
                f"unknown similarity measure {self.kind!r}; "
                f"supported: {', '.join(MEASURE_KINDS)}")


def count_similarity(measure: SimilarityMeasure, na: int, nb: int, nab: int) -> float:
    """Similarity of two hit counts given their conjunction count.

    Zero conjunction or a zero denominator scores 0. The caller is
    responsible for count consistency (nab <= min(na, nb)); live
    engines violate it, which the guard in `bsm` absorbs.
    """
    if nab <= 0:
        return 0.0
    kind = measure.kind
    if kind == "jaccard":
        denom = na + nb - nab
        return nab / denom if denom > 0 else 0.0
    if kind == "dice":
        denom = na + nb
        return 2 * nab / denom if denom > 0 else 0.0
    if kind == "overlap":
        denom = min(na, nb)
        return nab / denom if denom > 0 else 0.0
    if kind == "cosine":
        prod = na * nb
        return nab / math.sqrt(prod) if prod > 0 else 0.0
    if kind == "npmi":
        if measure.corpus_size is None:
            raise ConfigError("npmi needs corpus_size on the measure")
        return _npmi(measure.corpus_size, na, nb, nab)
    raise ConfigError(f"unknown similarity measure {kind!r}")


def _npmi(n: int, na: int, nb: int, nab: int) -> float:
    if n <= 0 or na <= 0 or nb <= 0:
        return 0.0
    denom = -math.log(nab / n)
    if denom <= 0:
        return 0.0
    npmi = math.log(n * nab / (na * nb)) / denom
    return min(1.0, max(0.0, (npmi + 1) / 2))


@dataclass
class StrategyEvidence:
    """Everything one query strategy produced for a pair: the three raw
    query results, their bags of words, and their parsed snippet URLs."""

    occ_a: QueryResult
    occ_b: QueryResult
    cooc: QueryResult
    bow_a: BowVector
    bow_b: BowVector
    bow_c: BowVector
    urls_a: tuple[UrlLayers, ...]
    urls_b: tuple[UrlLayers, ...]
    urls_c: tuple[UrlLayers, ...]


@dataclass
class PairEvidence:
    actor_a: "Actor"
    actor_b: "Actor"
    plain: StrategyEvidence
    pattern: StrategyEvidence

    def for_strategy(self, strategy: str) -> StrategyEvidence:
        if strategy == PLAIN:
            return self.plain
        if strategy == PATTERN:
            return self.pattern
        raise ConfigError(f"unknown strategy {strategy!r}")

    @property
    def pair_key(self) -> tuple[str, str]:
        return tuple(sorted((self.actor_a.id, self.actor_b.id)))


@dataclass
class RunContext:
    """Run-wide state the co-occurrence description measure needs: the
    word-mass of every pair in the run, per strategy, so each pair can be
    scored against the run mean."""

    masses: dict[str, dict[tuple, float]] = field(
        default_factory=lambda: {PLAIN: {}, PATTERN: {}})

    @classmethod
    def from_evidence(cls, evidences) -> "RunContext":
        ctx = cls()
        for evidence in evidences:
            for strategy in STRATEGIES:
                ctx.masses[strategy][evidence.pair_key] = pair_mass(evidence, strategy)
        return ctx

    def mean_mass(self, strategy: str) -> float:
        masses = self.masses[strategy]
        if not masses:
            raise ConfigError("run context has no pairs; the co-occurrence "
                              "description measure needs at least one")
        return sum(masses.values()) / len(masses)


def pair_mass(evidence: PairEvidence, strategy: str) -> float:
    """Word mass of a pair's co-occurrence bag: its support size."""
    return float(len(bow_support(evidence.for_strategy(strategy).bow_c)))


def bsm(evidence: PairEvidence, measure: SimilarityMeasure, strategy: str) -> float:
    """Hit-count strength relation with the consistency guard.

    Zero co-occurrence scores 0, and so does any co-occurrence count
    larger than either occurrence count (estimated live counts do
    that). Otherwise the configured count similarity applies. The
    pattern strategy of this measure is the quoted-phrase variant.
    """
    ev = evidence.for_strategy(strategy)
    nab = ev.cooc.hit_count
    if nab <= 0:
        return 0.0
    na = ev.occ_a.hit_count
    nb = ev.occ_b.hit_count
    if na >= nab and nb >= nab:
        return count_similarity(measure, na, nb, nab)
    return 0.0


def busm(evidence: PairEvidence, strategy: str) -> float:
    """URL-structure strength: layer similarity of the two occurrence
    URL lists."""
    ev = evidence.for_strategy(strategy)
    return url_set_similarity(ev.urls_a, ev.urls_b).value


def cbusm(evidence: PairEvidence, strategy: str) -> float:
    """Co-occurrence URL-depth strength: mean layer depth of the
    co-occurrence URLs over the co-occurrence hit count, clamped to 1."""
    ev = evidence.for_strategy(strategy)
    nab = ev.cooc.hit_count
    if nab <= 0:
        return 0.0
    if not ev.urls_c:
        return 0.0
    mean_depth = sum(u.depth for u in ev.urls_c) / len(ev.urls_c)
    return min(1.0, mean_depth / nab)


def dsm(evidence: PairEvidence, variant: str, strategy: str,
        run_context: RunContext | None = None) -> float:
    """Description (bag-of-words) strength relation.

    oDSM compares the two occurrence word sets directly; bDSM scores the
    co-occurrence words that the occurrence sets can vouch for; cDSM
    scores this pair's co-occurrence word mass against the run mean,
    which is why it needs a run context.
    """
    ev = evidence.for_strategy(strategy)
    support_a = bow_support(ev.bow_a)
    support_b = bow_support(ev.bow_b)
    if variant == "oDSM":
        denom = len(support_a) + len(support_b)
        if denom == 0:
            return 0.0
        return 2 * len(support_a & support_b) / denom
    if variant == "bDSM":
        denom = len(support_a) + len(support_b)
        if denom == 0:
            return 0.0
        vouched = bow_support(ev.bow_c) & (support_a | support_b)
        return min(1.0, 2 * len(vouched) / denom)
    if variant == "cDSM":
        if run_context is None:
            raise ConfigError("cDSM needs a run context")
        mean = run_context.mean_mass(strategy)
        mass = pair_mass(evidence, strategy)
        if mass == 0.0:
            return 0.0
        return mass / (mass + mean)
    raise ConfigError(f"unknown description variant {variant!r}; "
                      f"supported: {', '.join(DSM_VARIANTS)}")


@dataclass
class MethodMatrix:
    """One scored pair: all twelve strength relations plus the two
    strategy means and their sum."""

    sr: dict[str, float]
    mu: float
    eta: float
    total: float

    CHANNELS = ALL_METHODS + ("mu", "eta", "total")

    def value(self, channel: str) -> float:
        if channel in self.sr:
            return self.sr[channel]
        if channel == "mu":
            return self.mu
        if channel == "eta":
            return self.eta
        if channel == "total":
            return self.total
        raise ConfigError(f"unknown channel {channel!r}; "
                          f"supported: {', '.join(self.CHANNELS)}")


def method_matrix(evidence: PairEvidence, measure: SimilarityMeasure,
                  run_context: RunContext) -> MethodMatrix:
    """Score a pair under all twelve methods and integrate.

    `mu` is the exact six-way mean of the plain-strategy values, `eta`
    of the pattern-strategy values; `total` is their sum.
    """
    sr: dict[str, float] = {}
    for strategy, names in ((PLAIN, PLAIN_METHODS), (PATTERN, PATTERN_METHODS)):
        sr[names[0]] = bsm(evidence, measure, strategy)
        sr[names[1]] = busm(evidence, strategy)
        sr[names[2]] = cbusm(evidence, strategy)
        sr[names[3]] = dsm(evidence, "bDSM", strategy, run_context)
        sr[names[4]] = dsm(evidence, "oDSM", strategy, run_context)
        sr[names[5]] = dsm(evidence, "cDSM", strategy, run_context)
    mu = sum(sr[name] for name in PLAIN_METHODS) / 6
    eta = sum(sr[name] for name in PATTERN_METHODS) / 6
    return MethodMatrix(sr=sr, mu=mu, eta=eta, total=mu + eta)
