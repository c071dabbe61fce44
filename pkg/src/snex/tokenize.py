"""Shared tokenizer for index building, query terms, and snippet text.

Lowercase, split on runs of non-alphanumeric characters (underscore
included), drop empties. No stemming; an optional stopword list can be
configured. Keeping this dead simple keeps word counts transparent all
the way up to the bag-of-words weights.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

# Runs of unicode letters/digits; underscore is split on like punctuation.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class TokenizerConfig:
    stopwords: frozenset[str] = field(default_factory=frozenset)

    @classmethod
    def with_stopwords(cls, words) -> "TokenizerConfig":
        return cls(stopwords=frozenset(w.lower() for w in words))


DEFAULT_TOKENIZER = TokenizerConfig()


def tokenize(text: str, config: TokenizerConfig = DEFAULT_TOKENIZER) -> list[str]:
    """Split text into lowercase alphanumeric tokens."""
    tokens = _TOKEN_RE.findall(text.lower())
    if config.stopwords:
        tokens = [t for t in tokens if t not in config.stopwords]
    return tokens
