"""Uniform search backend layer.

The method layer only ever sees `SearchBackend.search(query, cap)`, so it
cannot tell an offline corpus index from a live engine. A generic
HTTP-JSON adapter stands in for vendor-specific scraping: the endpoint
template and the JSON paths to the hit count and snippet list are all
configuration. A JSONL-backed cache keeps repeated queries from hitting
the backend twice.
"""
from __future__ import annotations

import json
import threading
import time
import urllib.parse
from dataclasses import dataclass, field

import requests

from .corpus import CorpusIndex, Query, QueryResult, Snippet, run_query
from .errors import BackendError, BackendParseError, ConfigError


class SearchBackend:
    """Answers queries with a hit count and capped snippet list."""

    exact_hit_counts = False
    corpus_size_known = False

    def search(self, q: Query, cap: int) -> QueryResult:
        raise NotImplementedError

    @property
    def corpus_size(self) -> int | None:
        return None


class OfflineBackend(SearchBackend):
    """Pass-through to a CorpusIndex; counts are exact by construction."""

    exact_hit_counts = True
    corpus_size_known = True

    def __init__(self, index: CorpusIndex):
        self.index = index

    def search(self, q: Query, cap: int) -> QueryResult:
        return run_query(self.index, q, cap)

    @property
    def corpus_size(self) -> int:
        return self.index.corpus_size


@dataclass(frozen=True)
class LiveJsonConfig:
    """Shape of a JSON search API.

    `endpoint` must contain a `{query}` placeholder. The two paths are
    dot-separated routes into the response object; list steps may be
    numeric indices. Per-snippet field names are looked up inside each
    element of the snippet array.
    """

    endpoint: str
    hit_count_path: str
    snippets_path: str
    url_field: str = "url"
    title_field: str = "title"
    summary_field: str = "summary"
    delay_ms: int = 1000
    term_separator: str = ", "


class LiveJsonBackend(SearchBackend):
    """Generic live adapter: one request in flight, minimum delay between
    requests, no clamping of whatever hit counts the engine reports."""

    exact_hit_counts = False
    corpus_size_known = False

    def __init__(self, config: LiveJsonConfig, fetch=None):
        if "{query}" not in config.endpoint:
            raise ConfigError("live endpoint template must contain {query}")
        self.config = config
        self._fetch = fetch or self._default_fetch
        self._lock = threading.Lock()
        self._last_request = 0.0

    @staticmethod
    def _default_fetch(url: str) -> str:
        try:
            response = requests.get(url, timeout=30)
            response.raise_for_status()
            return response.text
        except requests.RequestException as exc:
            raise BackendError(f"request failed: {exc}") from exc

    def query_url(self, q: Query) -> str:
        terms = list(q.terms)
        if q.quoted:
            terms = [t if t.startswith('"') and t.endswith('"') else f'"{t}"'
                     for t in terms]
        query_text = self.config.term_separator.join(terms)
        return self.config.endpoint.format(query=urllib.parse.quote_plus(query_text))

    def search(self, q: Query, cap: int) -> QueryResult:
        with self._lock:
            self._respect_delay()
            try:
                body = self._fetch(self.query_url(q))
            except BackendError as exc:
                exc.query = q
                raise
        return self._parse(body, q, cap)

    def _respect_delay(self):
        wait = self.config.delay_ms / 1000.0 - (time.monotonic() - self._last_request)
        if wait > 0:
            time.sleep(wait)
        self._last_request = time.monotonic()

    def _parse(self, body: str, q: Query, cap: int) -> QueryResult:
        try:
            payload = json.loads(body)
        except json.JSONDecodeError as exc:
            raise BackendParseError(f"backend returned non-JSON body: {exc.msg}",
                                    query=q) from exc
        hits = _dig(payload, self.config.hit_count_path, q)
        try:
            hit_count = int(hits)
        except (TypeError, ValueError):
            raise BackendParseError(
                f"hit count at {self.config.hit_count_path!r} is not an integer: {hits!r}",
                query=q)
        raw_snippets = _dig(payload, self.config.snippets_path, q)
        if raw_snippets is None:
            raw_snippets = []
        if not isinstance(raw_snippets, list):
            raise BackendParseError(
                f"snippet list at {self.config.snippets_path!r} is not an array",
                query=q)
        snippets = []
        for item in raw_snippets[:cap]:
            if not isinstance(item, dict):
                raise BackendParseError("snippet entry is not an object", query=q)
            summary = str(item.get(self.config.summary_field, ""))
            snippets.append(Snippet(
                url=str(item.get(self.config.url_field, "")),
                title=str(item.get(self.config.title_field, "")),
                summary=tuple(summary.split()),
                source_doc_id=-1,
            ))
        return QueryResult(hit_count=hit_count, snippets=tuple(snippets))


def _dig(obj, path: str, q: Query):
    node = obj
    for step in path.split("."):
        if isinstance(node, dict) and step in node:
            node = node[step]
        elif isinstance(node, list) and step.lstrip("-").isdigit():
            try:
                node = node[int(step)]
            except IndexError:
                raise BackendParseError(f"path {path!r} missing from response", query=q)
        else:
            raise BackendParseError(f"path {path!r} missing from response", query=q)
    return node


def cache_key(q: Query, cap: int) -> tuple:
    """Lowercased, single-spaced terms plus the quoted flag and cap."""
    terms = tuple(" ".join(t.split()).lower() for t in q.terms)
    return (terms, bool(q.quoted), int(cap))


class QueryCache:
    """In-memory query -> result map with optional JSONL persistence.

    Entries are appended to the persistence file as they arrive; on load,
    the last entry for a key wins. Lookups are lock-free reads; writes
    are serialized.
    """

    def __init__(self, path=None):
        self.path = path
        self._entries: dict[tuple, QueryResult] = {}
        self._lock = threading.Lock()
        if path is not None:
            self._load()

    def _load(self):
        try:
            fh = open(self.path, encoding="utf-8")
        except FileNotFoundError:
            return
        with fh:
            for line in fh:
                if not line.strip():
                    continue
                obj = json.loads(line)
                key = (tuple(obj["terms"]), bool(obj["quoted"]), int(obj["cap"]))
                self._entries[key] = _result_from_dict(obj["result"])

    def get(self, q: Query, cap: int) -> QueryResult | None:
        return self._entries.get(cache_key(q, cap))

    def put(self, q: Query, cap: int, result: QueryResult) -> None:
        key = cache_key(q, cap)
        with self._lock:
            self._entries[key] = result
            if self.path is not None:
                record = {"terms": list(key[0]), "quoted": key[1], "cap": key[2],
                          "result": result_to_dict(result)}
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps(record, ensure_ascii=False) + "\n")

    def __len__(self):
        return len(self._entries)


def search_cached(backend: SearchBackend, cache: QueryCache | None,
                  q: Query, cap: int) -> QueryResult:
    """Serve from cache when possible, otherwise delegate and remember."""
    if cache is not None:
        hit = cache.get(q, cap)
        if hit is not None:
            return hit
    result = backend.search(q, cap)
    if cache is not None:
        cache.put(q, cap, result)
    return result


class CachedBackend(SearchBackend):
    """A backend with a cache bolted in front, for code that only takes a
    backend."""

    def __init__(self, backend: SearchBackend, cache: QueryCache):
        self.backend = backend
        self.cache = cache
        self.exact_hit_counts = backend.exact_hit_counts
        self.corpus_size_known = backend.corpus_size_known

    def search(self, q: Query, cap: int) -> QueryResult:
        return search_cached(self.backend, self.cache, q, cap)

    @property
    def corpus_size(self) -> int | None:
        return self.backend.corpus_size


def result_to_dict(result: QueryResult) -> dict:
    return {
        "hit_count": result.hit_count,
        "snippets": [
            {"url": s.url, "title": s.title, "summary": list(s.summary),
             "source_doc_id": s.source_doc_id}
            for s in result.snippets
        ],
    }


def _result_from_dict(obj: dict) -> QueryResult:
    return QueryResult(
        hit_count=int(obj["hit_count"]),
        snippets=tuple(
            Snippet(url=s["url"], title=s["title"],
                    summary=tuple(s["summary"]),
                    source_doc_id=int(s.get("source_doc_id", -1)))
            for s in obj["snippets"]
        ),
    )
