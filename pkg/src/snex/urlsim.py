"""URL layer structure and layer-prefix similarity.

A URL is flattened to its authority followed by its path segments, the
query string staying attached to the final segment. Two URLs are as
similar as their shared layer prefix is long, scored with the Dice
form 2*shared/(|a|+|b|). Lists of URLs are aligned by best match from
each side, averaged so the score stays symmetric.
"""
from __future__ import annotations

import urllib.parse
from dataclasses import dataclass

from .errors import UrlParseError


@dataclass(frozen=True)
class UrlLayers:
    scheme: str
    layers: tuple[str, ...]

    @property
    def depth(self) -> int:
        return len(self.layers)


@dataclass(frozen=True)
class UrlSimilarity:
    a_size: float
    b_size: float
    shared: float
    value: float


def parse_url(url: str) -> UrlLayers:
    """Split an absolute URL into [authority, segment, ...] layers.

    Empty path segments from doubled or trailing slashes are dropped;
    percent-encoding is decoded up front so later comparisons see the
    displayed form. Relative or schemeless input is rejected.
    """
    parts = urllib.parse.urlsplit(url.strip())
    if not parts.scheme or not parts.netloc:
        raise UrlParseError(f"not an absolute URL: {url!r}")
    layers = [urllib.parse.unquote(parts.netloc)]
    layers += [urllib.parse.unquote(seg) for seg in parts.path.split("/") if seg]
    if parts.query:
        layers[-1] = f"{layers[-1]}?{urllib.parse.unquote(parts.query)}"
    return UrlLayers(scheme=parts.scheme, layers=tuple(layers))


def layer_match(u: UrlLayers, v: UrlLayers) -> int:
    """Length of the longest common layer prefix, case-insensitively."""
    shared = 0
    for a, b in zip(u.layers, v.layers):
        if a.casefold() != b.casefold():
            break
        shared += 1
    return shared


def url_pair_similarity(u: UrlLayers, v: UrlLayers) -> UrlSimilarity:
    shared = layer_match(u, v)
    return _similarity(u.depth, v.depth, shared)


def url_set_similarity(us, vs) -> UrlSimilarity:
    """Accumulated similarity between two URL lists.

    Sizes are the summed depths. The shared mass pairs every URL with
    its best counterpart on the other side, averaged over both
    directions; an empty list on either side scores 0.
    """
    us = list(us)
    vs = list(vs)
    a_size = sum(u.depth for u in us)
    b_size = sum(v.depth for v in vs)
    if not us or not vs:
        return UrlSimilarity(a_size=a_size, b_size=b_size, shared=0.0, value=0.0)
    forward = sum(max(layer_match(u, v) for v in vs) for u in us)
    backward = sum(max(layer_match(u, v) for u in us) for v in vs)
    shared = (forward + backward) / 2
    return _similarity(a_size, b_size, shared)


def _similarity(a_size, b_size, shared) -> UrlSimilarity:
    total = a_size + b_size
    value = 2 * shared / total if total > 0 else 0.0
    return UrlSimilarity(a_size=a_size, b_size=b_size, shared=shared, value=value)
