from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from snex.bow import bow_from_snippets, bow_support, snippet_tokens
from snex.corpus import Snippet

from .oracles import oracle_bow

APPROX = 1e-9


def snip(words, title=""):
    return Snippet(url="https://x.test/s", title=title, summary=tuple(words),
                   source_doc_id=0)


words_strategy = st.lists(st.sampled_from("abcdefg"), min_size=0, max_size=12)
snippets_strategy = st.lists(
    words_strategy.map(lambda ws: snip(ws)), min_size=0, max_size=8)


class TestWeights:
    def test_single_snippet_hand_computed(self):
        vector = bow_from_snippets([snip(["a", "b", "a", "c"])])
        assert vector.raw == pytest.approx({"a": 0.5, "b": 0.25, "c": 0.25})
        assert vector.weights == pytest.approx(
            {"a": 0.8164965809277261, "b": 0.4082482904638631,
             "c": 0.4082482904638631})
        assert vector.source_snippet_count == 1

    def test_two_snippets_hand_computed(self):
        vector = bow_from_snippets([snip(["a", "b"]), snip(["a"])])
        assert vector.raw == pytest.approx({"a": 0.75, "b": 0.25})
        assert vector.weights == pytest.approx(
            {"a": 0.9486832980505138, "b": 0.31622776601683794})

    def test_single_repeated_word_is_unit(self):
        vector = bow_from_snippets([snip(["x", "x", "x"])])
        assert vector.weights == pytest.approx({"x": 1.0})

    def test_empty_input_gives_empty_vector(self):
        vector = bow_from_snippets([])
        assert not vector
        assert vector.weights == {} and vector.raw == {}
        assert vector.source_snippet_count == 0

    def test_wordless_snippet_skipped(self):
        vector = bow_from_snippets([snip([]), snip(["a"])])
        assert vector.source_snippet_count == 1
        assert vector.weights == pytest.approx({"a": 1.0})

    def test_title_words_counted(self):
        vector = bow_from_snippets([snip(["body"], title="Heading Words")])
        assert set(vector.weights) == {"heading", "words", "body"}
        assert vector.raw == pytest.approx(
            {"heading": 1 / 3, "words": 1 / 3, "body": 1 / 3})

    def test_summary_words_are_tokenized(self):
        vector = bow_from_snippets([snip(["Alice,", "ALICE!"])])
        assert vector.weights == pytest.approx({"alice": 1.0})

    def test_oracle_recount(self):
        rng = random.Random(7)
        vocabulary = ["net", "work", "graph", "alice", "bob", "data"]
        for _ in range(25):
            snippets = [
                snip([rng.choice(vocabulary) for _ in range(rng.randint(0, 10))])
                for _ in range(rng.randint(1, 10))
            ]
            vector = bow_from_snippets(snippets)
            raw, normalized = oracle_bow([list(snippet_tokens(s)) for s in snippets])
            assert vector.raw == pytest.approx(raw, abs=1e-12)
            assert vector.weights == pytest.approx(normalized, abs=1e-12)

    @settings(max_examples=200)
    @given(snippets_strategy)
    def test_unit_norm_invariant(self, snippets):
        vector = bow_from_snippets(snippets)
        if vector:
            norm = math.fsum(w * w for w in vector.weights.values())
            assert norm == pytest.approx(1.0, abs=APPROX)

    @settings(max_examples=100)
    @given(snippets_strategy)
    def test_duplication_leaves_weights_unchanged(self, snippets):
        once = bow_from_snippets(snippets)
        twice = bow_from_snippets(list(snippets) + list(snippets))
        assert twice.raw == pytest.approx(once.raw, abs=APPROX)
        assert twice.weights == pytest.approx(once.weights, abs=APPROX)

    @settings(max_examples=100)
    @given(snippets_strategy)
    def test_range_and_supports_match(self, snippets):
        vector = bow_from_snippets(snippets)
        assert set(vector.weights) == set(vector.raw)
        for value in vector.weights.values():
            assert 0 < value <= 1 + APPROX


class TestSupport:
    def test_empty_vector(self):
        assert bow_support(bow_from_snippets([])) == set()

    def test_threshold(self):
        vector = bow_from_snippets([snip(["a"] * 9 + ["b"])])
        assert bow_support(vector, 0.5) == {"a"}

    def test_zero_epsilon_is_all_nonzero_words(self):
        vector = bow_from_snippets([snip(["a", "b", "c"])])
        assert bow_support(vector, 0.0) == {"a", "b", "c"}

    def test_negative_epsilon_rejected(self):
        with pytest.raises(ValueError):
            bow_support(bow_from_snippets([]), -0.1)
