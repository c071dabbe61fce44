"""Offline information space: documents, inverted index, search-style results.

Answers the same question a web search engine would: how many items
mention an actor (or a pair of actors), and what do the matching items
look like as (url, title, summary) snippets. Unquoted terms match a
document when all their tokens occur anywhere in its title or body;
quoted terms must occur as a contiguous phrase. Results are ordered by
ascending doc_id so identical inputs always produce identical output.
"""
from __future__ import annotations

import json
import pickle
from dataclasses import dataclass, field

from .errors import DataError, DuplicateDocIdError, InvalidQueryError
from .tokenize import DEFAULT_TOKENIZER, TokenizerConfig, tokenize

SNIPPET_WORDS = 50
DEFAULT_SNIPPET_CAP = 10

_INDEX_FORMAT = "snex-index-v1"


@dataclass(frozen=True)
class Document:
    doc_id: int
    url: str
    title: str
    body: str


@dataclass(frozen=True)
class Query:
    """One or two actor-name terms, optionally with exact-phrase semantics."""

    terms: tuple[str, ...]
    quoted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))


@dataclass(frozen=True)
class Snippet:
    url: str
    title: str
    summary: tuple[str, ...]
    source_doc_id: int


@dataclass(frozen=True)
class QueryResult:
    hit_count: int
    snippets: tuple[Snippet, ...]


@dataclass
class _Posting:
    """Token positions within one document, title and body kept apart so a
    phrase can never straddle the title/body boundary."""

    title_positions: tuple[int, ...] = ()
    body_positions: tuple[int, ...] = ()


class CorpusIndex:
    """Immutable after build_index; safe for concurrent readers."""

    def __init__(self, documents: list[Document],
                 postings: dict[str, dict[int, _Posting]],
                 tokenizer_config: TokenizerConfig):
        self.documents = documents
        self.postings = postings
        self.tokenizer_config = tokenizer_config
        self._by_id = {d.doc_id: d for d in documents}

    @property
    def corpus_size(self) -> int:
        return len(self.documents)

    def document(self, doc_id: int) -> Document:
        return self._by_id[doc_id]


def build_index(documents, tokenizer_config: TokenizerConfig = DEFAULT_TOKENIZER) -> CorpusIndex:
    """Build the inverted index over title + body tokens.

    Documents are stored sorted by doc_id. Duplicate ids are rejected;
    an empty corpus is fine (every query then reports zero hits).
    """
    docs = sorted(documents, key=lambda d: d.doc_id)
    seen: set[int] = set()
    postings: dict[str, dict[int, _Posting]] = {}
    for doc in docs:
        if doc.doc_id in seen:
            raise DuplicateDocIdError(doc.doc_id)
        if doc.doc_id < 0:
            raise DataError(f"doc_id must be non-negative, got {doc.doc_id}")
        if not doc.url:
            raise DataError(f"document {doc.doc_id} has an empty url")
        seen.add(doc.doc_id)
        title_pos = _positions(tokenize(doc.title, tokenizer_config))
        body_pos = _positions(tokenize(doc.body, tokenizer_config))
        for token in title_pos.keys() | body_pos.keys():
            entry = postings.setdefault(token, {}).setdefault(doc.doc_id, _Posting())
            entry.title_positions = title_pos.get(token, ())
            entry.body_positions = body_pos.get(token, ())
    return CorpusIndex(docs, postings, tokenizer_config)


def _positions(tokens: list[str]) -> dict[str, tuple[int, ...]]:
    out: dict[str, list[int]] = {}
    for i, tok in enumerate(tokens):
        out.setdefault(tok, []).append(i)
    return {tok: tuple(pos) for tok, pos in out.items()}


def run_query(index: CorpusIndex, q: Query, cap: int = DEFAULT_SNIPPET_CAP) -> QueryResult:
    """Exact hit count plus up to `cap` snippets in ascending doc_id order.

    Two-term queries return the documents satisfying both terms, i.e.
    the co-occurrence of the two actors in this corpus.
    """
    term_tokens = _validate_query(index.tokenizer_config, q)
    matching: set[int] | None = None
    for tokens in term_tokens:
        docs = _matching_docs(index, tokens, q.quoted)
        matching = docs if matching is None else matching & docs
    assert matching is not None
    ordered = sorted(matching)
    snippets = tuple(
        make_snippet(index.document(doc_id), q, index.tokenizer_config)
        for doc_id in ordered[:max(cap, 0)]
    )
    return QueryResult(hit_count=len(ordered), snippets=snippets)


def _validate_query(config: TokenizerConfig, q: Query) -> list[list[str]]:
    if not 1 <= len(q.terms) <= 2:
        raise InvalidQueryError(f"query must have 1 or 2 terms, got {len(q.terms)}")
    term_tokens = []
    for term in q.terms:
        tokens = tokenize(term, config)
        if not tokens:
            raise InvalidQueryError(f"term {term!r} tokenizes to nothing")
        term_tokens.append(tokens)
    return term_tokens


def _matching_docs(index: CorpusIndex, tokens: list[str], quoted: bool) -> set[int]:
    postings = [index.postings.get(tok) for tok in tokens]
    if any(p is None for p in postings):
        return set()
    candidates = set(postings[0])
    for p in postings[1:]:
        candidates &= p.keys()
    if not quoted:
        return candidates
    return {
        doc_id for doc_id in candidates
        if _has_phrase([p[doc_id].title_positions for p in postings])
        or _has_phrase([p[doc_id].body_positions for p in postings])
    }


def _has_phrase(position_lists: list[tuple[int, ...]]) -> bool:
    """True when the token positions line up consecutively."""
    if any(not positions for positions in position_lists):
        return False
    starts = set(position_lists[0])
    for offset, positions in enumerate(position_lists[1:], start=1):
        starts &= {p - offset for p in positions}
        if not starts:
            return False
    return True


def make_snippet(doc: Document, q: Query,
                 config: TokenizerConfig = DEFAULT_TOKENIZER) -> Snippet:
    """Cut a 50-word summary window around the first query match.

    The window centers on the first body word containing the first
    term's first token, shifting to stay inside the text near the
    edges. A title-only match starts the window at body word 0.
    """
    words = doc.body.split()
    first_token = tokenize(q.terms[0], config)[0]
    match_at = 0
    for i, word in enumerate(words):
        if first_token in tokenize(word, config):
            match_at = i
            break
    start = max(0, min(match_at - SNIPPET_WORDS // 2, len(words) - SNIPPET_WORDS))
    summary = tuple(words[start:start + SNIPPET_WORDS])
    return Snippet(url=doc.url, title=doc.title, summary=summary,
                   source_doc_id=doc.doc_id)


def load_corpus_jsonl(path) -> list[Document]:
    """Read the corpus interchange format: one JSON object per line with
    integer `id` and string `url`, `title`, `body` fields."""
    documents = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}: malformed JSON on line {lineno}: {exc.msg}") from exc
            try:
                documents.append(Document(
                    doc_id=int(obj["id"]),
                    url=str(obj["url"]),
                    title=str(obj.get("title", "")),
                    body=str(obj.get("body", "")),
                ))
            except (KeyError, TypeError, ValueError) as exc:
                raise DataError(f"{path}: bad document on line {lineno}: {exc}") from exc
    return documents


def save_index(index: CorpusIndex, path) -> None:
    payload = {
        "format": _INDEX_FORMAT,
        "documents": index.documents,
        "postings": index.postings,
        "tokenizer_config": index.tokenizer_config,
    }
    with open(path, "wb") as fh:
        pickle.dump(payload, fh, protocol=pickle.HIGHEST_PROTOCOL)


def load_index(path) -> CorpusIndex:
    with open(path, "rb") as fh:
        try:
            payload = pickle.load(fh)
        except Exception as exc:
            raise DataError(f"{path}: not a readable index file: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("format") != _INDEX_FORMAT:
        raise DataError(f"{path}: not a {_INDEX_FORMAT} file")
    return CorpusIndex(payload["documents"], payload["postings"],
                       payload["tokenizer_config"])
