"""Independent brute-force reference implementations.

Everything here is deliberately naive and shares no code with the
package: tokenization walks characters, matching scans full documents,
and the weighting/similarity formulas are transcribed directly. Tests
compare package output against these.
"""
from __future__ import annotations

import math


def oracle_tokenize(text):
    words, current = [], []
    for ch in text.lower():
        if ch.isalnum() and ch != "_":
            current.append(ch)
        else:
            if current:
                words.append("".join(current))
                current = []
    if current:
        words.append("".join(current))
    return words


def _contains_phrase(tokens, phrase):
    k = len(phrase)
    if k == 0:
        return False
    return any(tokens[i:i + k] == phrase for i in range(len(tokens) - k + 1))


def oracle_term_matches(title, body, term, quoted):
    term_tokens = oracle_tokenize(term)
    if quoted:
        return (_contains_phrase(oracle_tokenize(title), term_tokens)
                or _contains_phrase(oracle_tokenize(body), term_tokens))
    present = set(oracle_tokenize(title)) | set(oracle_tokenize(body))
    return all(tok in present for tok in term_tokens)


def oracle_hits(docs, terms, quoted):
    """Full scan. docs: iterable of (doc_id, title, body) triples.
    Returns (count, sorted matching ids)."""
    ids = sorted(
        doc_id for doc_id, title, body in docs
        if all(oracle_term_matches(title, body, term, quoted) for term in terms)
    )
    return len(ids), ids


def oracle_bow(token_lists):
    """Naive recount of the per-snippet-mean weighting and its unit-norm
    scaling. Returns (raw, normalized) dicts."""
    contributing = [tokens for tokens in token_lists if tokens]
    if not contributing:
        return {}, {}
    vocabulary = sorted({tok for tokens in contributing for tok in tokens})
    raw = {}
    for word in vocabulary:
        acc = 0.0
        for tokens in contributing:
            acc += tokens.count(word) / len(tokens)
        raw[word] = acc / len(contributing)
    norm = math.sqrt(sum(v * v for v in raw.values()))
    normalized = {w: v / norm for w, v in raw.items()}
    return raw, normalized


def oracle_layer_match(a, b):
    n = 0
    for x, y in zip(a, b):
        if x.lower() != y.lower():
            break
        n += 1
    return n


def oracle_url_set_value(layers_a, layers_b):
    """Direct evaluation of the accumulated URL similarity on plain layer
    lists (list of list of strings)."""
    size_a = sum(len(layers) for layers in layers_a)
    size_b = sum(len(layers) for layers in layers_b)
    if not layers_a or not layers_b or size_a + size_b == 0:
        return 0.0
    forward = sum(max(oracle_layer_match(a, b) for b in layers_b) for a in layers_a)
    backward = sum(max(oracle_layer_match(a, b) for a in layers_a) for b in layers_b)
    shared = (forward + backward) / 2
    return 2 * shared / (size_a + size_b)


def oracle_count_similarity(kind, na, nb, nab, corpus_size=None):
    if nab == 0:
        return 0.0
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
        denom = math.sqrt(na * nb)
        return nab / denom if denom > 0 else 0.0
    if kind == "npmi":
        if corpus_size is None or corpus_size <= 0 or na == 0 or nb == 0:
            return 0.0
        down = -math.log(nab / corpus_size)
        if down <= 0:
            return 0.0
        value = (math.log(corpus_size * nab / (na * nb)) / down + 1) / 2
        return min(1.0, max(0.0, value))
    raise ValueError(kind)
