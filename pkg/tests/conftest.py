from __future__ import annotations

import random

import pytest

from snex.bow import bow_from_snippets
from snex.corpus import Document, Query, QueryResult, Snippet
from snex.gateway import SearchBackend
from snex.graph import Actor
from snex.methods import PairEvidence, StrategyEvidence
from snex.pipeline import snippet_urls

FILLER_WORDS = (
    "research group met about the new results on network data and shared "
    "findings during a long workshop session covering methods tools archives "
    "papers ideas models graphs queries engines structure communities"
).split()

HOSTS = ("https://example.org", "https://research.example.org",
         "https://people.example.net", "https://lab.example.com")

PATH_POOL = ("pub", "people", "projects", "2020", "notes", "team", "archive")


def make_actor(actor_id, name=None):
    return Actor(id=actor_id, display_name=name or actor_id.title())


class StubBackend(SearchBackend):
    """Canned results keyed by (term set lowercased, quoted); term order
    is ignored because co-occurrence is symmetric."""

    exact_hit_counts = True
    corpus_size_known = True

    def __init__(self, mapping, corpus_size=1000):
        self.mapping = {}
        for (terms, quoted), result in mapping.items():
            key = (tuple(sorted(t.lower() for t in terms)), bool(quoted))
            self.mapping[key] = result
        self._corpus_size = corpus_size

    def search(self, q: Query, cap: int) -> QueryResult:
        key = (tuple(sorted(t.lower() for t in q.terms)), bool(q.quoted))
        return self.mapping.get(key, QueryResult(hit_count=0, snippets=()))

    @property
    def corpus_size(self):
        return self._corpus_size


class CountingBackend(SearchBackend):
    """Delegates and counts calls; for query-budget checks."""

    def __init__(self, inner: SearchBackend):
        self.inner = inner
        self.calls = 0
        self.exact_hit_counts = inner.exact_hit_counts
        self.corpus_size_known = inner.corpus_size_known

    def search(self, q: Query, cap: int) -> QueryResult:
        self.calls += 1
        return self.inner.search(q, cap)

    @property
    def corpus_size(self):
        return self.inner.corpus_size


def paper_counts_backend():
    """Stub reproducing the worked-example hit counts for two actors."""
    a, b = "Mahyuddin K. M. Nasution", "MarischaElveny"
    qa, qb = f'"{a}"', f'"{b}"'
    empty = ()
    return StubBackend({
        ((a,), False): QueryResult(121000, empty),
        ((b,), False): QueryResult(2130000, empty),
        ((a, b), False): QueryResult(1410, empty),
        ((qa,), True): QueryResult(6740, empty),
        ((qb,), True): QueryResult(2470, empty),
        ((qa, qb), True): QueryResult(774, empty),
    })


def random_corpus(rng: random.Random, n_docs: int, actor_names) -> list[Document]:
    """Synthetic corpus whose documents mention random subsets of the
    actors, mixing contiguous full names (phrase matches) with scattered
    name parts (conjunctive-only matches)."""
    docs = []
    for doc_id in range(n_docs):
        words = [rng.choice(FILLER_WORDS) for _ in range(rng.randint(8, 60))]
        for name in actor_names:
            roll = rng.random()
            if roll < 0.35:
                pos = rng.randrange(len(words) + 1)
                words[pos:pos] = name.split()
            elif roll < 0.55:
                for part in name.split():
                    words.insert(rng.randrange(len(words) + 1), part)
        title_words = [rng.choice(FILLER_WORDS) for _ in range(rng.randint(0, 4))]
        if rng.random() < 0.15 and actor_names:
            title_words += rng.choice(list(actor_names)).split()
        url = "/".join(
            [rng.choice(HOSTS)]
            + rng.sample(PATH_POOL, rng.randint(0, 3))
            + [f"d{doc_id}"]
        )
        docs.append(Document(doc_id=doc_id, url=url,
                             title=" ".join(title_words), body=" ".join(words)))
    return docs


def random_snippet(rng: random.Random, seq: int) -> Snippet:
    words = tuple(rng.choice(FILLER_WORDS) for _ in range(rng.randint(0, 12)))
    if rng.random() < 0.05:
        url = "not a url"  # live engines emit junk sometimes
    else:
        url = "/".join([rng.choice(HOSTS)]
                       + rng.sample(PATH_POOL, rng.randint(0, 3)) + [f"s{seq}"])
    title = " ".join(rng.choice(FILLER_WORDS) for _ in range(rng.randint(0, 3)))
    return Snippet(url=url, title=title, summary=words, source_doc_id=seq)


def random_result(rng: random.Random, max_hits: int = 2_000_000) -> QueryResult:
    kind = rng.random()
    if kind < 0.2:
        hits = 0
    elif kind < 0.6:
        hits = rng.randint(1, 30)
    else:
        hits = rng.randint(100, max_hits)
    n_snippets = min(hits, rng.randint(0, 10))
    snippets = tuple(random_snippet(rng, i) for i in range(n_snippets))
    return QueryResult(hit_count=hits, snippets=snippets)


def make_strategy_evidence(occ_a: QueryResult, occ_b: QueryResult,
                           cooc: QueryResult) -> StrategyEvidence:
    return StrategyEvidence(
        occ_a=occ_a, occ_b=occ_b, cooc=cooc,
        bow_a=bow_from_snippets(occ_a.snippets),
        bow_b=bow_from_snippets(occ_b.snippets),
        bow_c=bow_from_snippets(cooc.snippets),
        urls_a=snippet_urls(occ_a),
        urls_b=snippet_urls(occ_b),
        urls_c=snippet_urls(cooc),
    )


def random_pair_evidence(rng: random.Random, id_a="a", id_b="b") -> PairEvidence:
    """Evidence with arbitrary counts, including the inconsistent kind
    (co-occurrence above occurrence) that only live engines produce."""
    return PairEvidence(
        actor_a=make_actor(id_a), actor_b=make_actor(id_b),
        plain=make_strategy_evidence(random_result(rng), random_result(rng),
                                     random_result(rng)),
        pattern=make_strategy_evidence(random_result(rng), random_result(rng),
                                       random_result(rng)),
    )


def swap_pair_evidence(evidence: PairEvidence) -> PairEvidence:
    def flip(ev: StrategyEvidence) -> StrategyEvidence:
        return StrategyEvidence(
            occ_a=ev.occ_b, occ_b=ev.occ_a, cooc=ev.cooc,
            bow_a=ev.bow_b, bow_b=ev.bow_a, bow_c=ev.bow_c,
            urls_a=ev.urls_b, urls_b=ev.urls_a, urls_c=ev.urls_c)

    return PairEvidence(actor_a=evidence.actor_b, actor_b=evidence.actor_a,
                        plain=flip(evidence.plain), pattern=flip(evidence.pattern))


@pytest.fixture
def rng():
    return random.Random(20240811)
