"""Bag-of-words vectors over snippet text.

Each snippet contributes the relative frequency of every word it
contains (count over snippet length, title words included); a word's
raw weight is the mean of those contributions over the retrieved
snippets. The vector is then scaled to unit Euclidean length, so the
weights of any non-empty vector always satisfy sum(pr^2) = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .corpus import Snippet
from .tokenize import DEFAULT_TOKENIZER, TokenizerConfig, tokenize


@dataclass
class BowVector:
    weights: dict[str, float] = field(default_factory=dict)   # unit-norm pr(w)
    raw: dict[str, float] = field(default_factory=dict)       # per-snippet mean p(w)
    source_snippet_count: int = 0

    def __bool__(self):
        return bool(self.weights)


EMPTY_BOW = BowVector()


def snippet_tokens(snippet: Snippet,
                   config: TokenizerConfig = DEFAULT_TOKENIZER) -> list[str]:
    return tokenize(snippet.title, config) + tokenize(" ".join(snippet.summary), config)


def bow_from_snippets(snippets,
                      config: TokenizerConfig = DEFAULT_TOKENIZER) -> BowVector:
    """Weighted bag of words over the titles and summaries of `snippets`.

    Snippets with no tokens are skipped and do not count toward the
    averaging denominator. No snippets (or no tokens at all) gives the
    empty vector.
    """
    sums: dict[str, float] = {}
    contributing = 0
    for snippet in snippets:
        tokens = snippet_tokens(snippet, config)
        if not tokens:
            continue
        contributing += 1
        length = len(tokens)
        counts: dict[str, int] = {}
        for tok in tokens:
            counts[tok] = counts.get(tok, 0) + 1
        for tok, count in counts.items():
            sums[tok] = sums.get(tok, 0.0) + count / length
    if contributing == 0:
        return BowVector()
    raw = {tok: total / contributing for tok, total in sums.items()}
    norm = math.sqrt(sum(p * p for p in raw.values()))
    if norm == 0.0:
        return BowVector()
    weights = {tok: p / norm for tok, p in raw.items()}
    return BowVector(weights=weights, raw=raw, source_snippet_count=contributing)


def bow_support(vector: BowVector, epsilon: float = 0.0) -> set[str]:
    """Words whose normalized weight exceeds `epsilon`."""
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    return {w for w, pr in vector.weights.items() if pr > epsilon}


def bow_debug_dump(vector: BowVector) -> dict[str, list[float]]:
    """word -> [raw weight, normalized weight], for inspection."""
    return {w: [vector.raw[w], vector.weights[w]] for w in sorted(vector.weights)}
