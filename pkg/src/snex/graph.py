"""Weighted social graph assembly, export, and scoring against a gold
edge list.

Vertices map 1:1 to actors; an undirected edge appears wherever the
selected channel of a pair's method matrix exceeds the threshold.
Exports are deterministic byte-for-byte: vertices and edges are sorted
by actor id and weights are rendered at 6 significant digits.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

from .errors import ConfigError, DataError, ValidationError
from .methods import MethodMatrix

EXPORT_FORMATS = ("graphml", "dot", "csv-edges", "json")


@dataclass(frozen=True)
class Actor:
    """A named social entity; the pattern name is its exact-phrase query
    form and defaults to the display name in quotation marks."""

    id: str
    display_name: str
    pattern_name: str = ""

    def __post_init__(self):
        if not self.id:
            raise DataError("actor id must be non-empty")
        if not self.display_name:
            raise DataError(f"actor {self.id!r} has an empty display name")
        if not self.pattern_name:
            object.__setattr__(self, "pattern_name", f'"{self.display_name}"')


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    weight: float
    channel: str


@dataclass(frozen=True)
class SocialGraph:
    vertices: tuple[Actor, ...]
    edges: tuple[Edge, ...]

    def edge_pairs(self) -> set[tuple[str, str]]:
        return {tuple(sorted((e.source, e.target))) for e in self.edges}


@dataclass(frozen=True)
class EvaluationReport:
    precision: float
    recall: float
    f_measure: float
    true_positives: int
    false_positives: int
    false_negatives: int
    threshold: float


def build_graph(actors, matrices: dict[tuple, MethodMatrix],
                channel: str, threshold: float = 0.0) -> SocialGraph:
    """One vertex per actor, one edge per pair whose channel value
    exceeds the threshold (strictly)."""
    if threshold < 0:
        raise ConfigError("threshold must be >= 0")
    vertices = tuple(sorted(actors, key=lambda a: a.id))
    ids = [a.id for a in vertices]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise DataError(f"duplicate actor ids: {', '.join(dupes)}")
    known = set(ids)
    edges = []
    for pair in sorted(matrices):
        a, b = sorted(pair)
        if a not in known or b not in known:
            raise ValidationError(f"matrix pair ({a}, {b}) references unknown actors")
        value = matrices[pair].value(channel)
        if value > threshold:
            edges.append(Edge(source=a, target=b, weight=value, channel=channel))
    return SocialGraph(vertices=vertices, edges=tuple(edges))


def _fmt6(x: float) -> str:
    return format(x, ".6g")


def export_graph(g: SocialGraph, fmt: str) -> bytes:
    """Serialize the graph; see EXPORT_FORMATS for what is supported."""
    if fmt == "csv-edges":
        text = _to_csv(g)
    elif fmt == "json":
        text = _to_json(g)
    elif fmt == "graphml":
        text = _to_graphml(g)
    elif fmt == "dot":
        text = _to_dot(g)
    else:
        raise ConfigError(f"unsupported export format {fmt!r}; "
                          f"supported: {', '.join(EXPORT_FORMATS)}")
    return text.encode("utf-8")


def _to_csv(g: SocialGraph) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["source", "target", "weight", "channel"])
    for e in g.edges:
        writer.writerow([e.source, e.target, _fmt6(e.weight), e.channel])
    return out.getvalue()


def _to_json(g: SocialGraph) -> str:
    obj = {
        "vertices": [
            {"id": a.id, "display_name": a.display_name,
             "pattern_name": a.pattern_name}
            for a in g.vertices
        ],
        "edges": [
            {"source": e.source, "target": e.target,
             "weight": float(_fmt6(e.weight)), "channel": e.channel}
            for e in g.edges
        ],
    }
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _to_graphml(g: SocialGraph) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="name" for="node" attr.name="display_name" attr.type="string"/>',
        '  <key id="weight" for="edge" attr.name="weight" attr.type="double"/>',
        '  <key id="channel" for="edge" attr.name="channel" attr.type="string"/>',
        '  <graph id="G" edgedefault="undirected">',
    ]
    for a in g.vertices:
        lines.append(f'    <node id={quoteattr(a.id)}>'
                     f'<data key="name">{escape(a.display_name)}</data></node>')
    for e in g.edges:
        lines.append(f'    <edge source={quoteattr(e.source)} target={quoteattr(e.target)}>'
                     f'<data key="weight">{_fmt6(e.weight)}</data>'
                     f'<data key="channel">{escape(e.channel)}</data></edge>')
    lines += ["  </graph>", "</graphml>", ""]
    return "\n".join(lines)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_dot(g: SocialGraph) -> str:
    lines = ["graph socialnetwork {"]
    for a in g.vertices:
        lines.append(f"  {_dot_quote(a.id)} [label={_dot_quote(a.display_name)}];")
    for e in g.edges:
        lines.append(f"  {_dot_quote(e.source)} -- {_dot_quote(e.target)} "
                     f"[weight={_fmt6(e.weight)}, label={_dot_quote(_fmt6(e.weight))}];")
    lines += ["}", ""]
    return "\n".join(lines)


def graph_from_csv_edges(data) -> SocialGraph:
    """Rebuild a graph from our own csv-edges output.

    Only edge endpoints are recoverable from the format, so the vertex
    list is the set of endpoint ids. Row order is preserved, which makes
    export -> import -> export byte-identical.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    reader = csv.reader(io.StringIO(data))
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("edge csv is empty; expected a source,target,weight,channel header")
    if header != ["source", "target", "weight", "channel"]:
        raise DataError(f"unexpected edge csv header: {header}")
    edges = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 4:
            raise DataError(f"edge csv line {lineno}: expected 4 fields, got {len(row)}")
        try:
            weight = float(row[2])
        except ValueError:
            raise DataError(f"edge csv line {lineno}: bad weight {row[2]!r}")
        edges.append(Edge(source=row[0], target=row[1], weight=weight, channel=row[3]))
    ids = sorted({e.source for e in edges} | {e.target for e in edges})
    vertices = tuple(Actor(id=i, display_name=i) for i in ids)
    return SocialGraph(vertices=vertices, edges=tuple(edges))


def evaluate(g: SocialGraph, gold_edges, threshold: float | None = None) -> EvaluationReport:
    """Precision, recall, and F-measure of the extracted edge set.

    With a threshold, only edges strictly above it count as extracted.
    Gold edges must reference actors the graph knows about.
    """
    gold = {tuple(sorted(pair)) for pair in gold_edges}
    known = {a.id for a in g.vertices}
    offenders = sorted({i for pair in gold for i in pair if i not in known})
    if offenders:
        raise ValidationError(f"gold edges reference unknown actor ids: "
                              f"{', '.join(offenders)}")
    if threshold is None:
        extracted = g.edge_pairs()
    else:
        extracted = {tuple(sorted((e.source, e.target)))
                     for e in g.edges if e.weight > threshold}
    tp = len(extracted & gold)
    precision = tp / len(extracted) if extracted else 0.0
    recall = tp / len(gold) if gold else 0.0
    f_measure = (2 * precision * recall / (precision + recall)
                 if precision + recall > 0 else 0.0)
    return EvaluationReport(
        precision=precision, recall=recall, f_measure=f_measure,
        true_positives=tp, false_positives=len(extracted) - tp,
        false_negatives=len(gold) - tp,
        threshold=0.0 if threshold is None else threshold,
    )


def load_gold_csv(path) -> set[tuple[str, str]]:
    """Gold standard interchange format: csv with a source,target header,
    one unordered pair per row."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty gold file; expected a source,target header")
        if [h.strip() for h in header] != ["source", "target"]:
            raise DataError(f"{path}: expected header source,target, got {header}")
        gold = set()
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2 or not row[0] or not row[1]:
                raise DataError(f"{path} line {lineno}: expected two non-empty ids")
            gold.add(tuple(sorted((row[0].strip(), row[1].strip()))))
    return gold
