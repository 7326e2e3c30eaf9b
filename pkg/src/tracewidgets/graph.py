"""File-loaded property graph and the data operations the demo widgets use.

The graph is immutable after loading, so every operation here is a pure
function and safe to call concurrently. Graph files are a single JSON document:

    {"nodes": [{"id", "type", "title", "attrs"?}, ...],
     "edges": [{"src", "dst", "type", "attrs"?}, ...]}
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from .errors import ContractError, FormatError, NotFoundError


class Direction(str, Enum):
    IN = "in"
    OUT = "out"
    BOTH = "both"


def coerce_direction(value: Any, default: Direction = Direction.BOTH) -> Direction:
    if value is None:
        return default
    if isinstance(value, Direction):
        return value
    try:
        return Direction(value)
    except ValueError:
        raise ContractError(f"unknown direction: {value!r}") from None


class SortOrder(str, Enum):
    VALUE_DESC = "value_desc"
    LABEL_ASC = "label_asc"


@dataclass(frozen=True)
class Node:
    id: str
    node_type: str
    title: str
    attrs: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    rel_type: str
    attrs: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Distribution:
    """Ordered (label, value) entries for a bar chart. Labels are unique."""

    entries: tuple[tuple[str, float], ...]
    sort_order: SortOrder = SortOrder.VALUE_DESC

    def to_payload(self) -> list[list[Any]]:
        return [[label, value] for label, value in self.entries]


def _sort_entries(pairs: dict[str, float], order: SortOrder) -> tuple[tuple[str, float], ...]:
    if order is SortOrder.LABEL_ASC:
        key = lambda kv: kv[0]
    else:
        key = lambda kv: (-kv[1], kv[0])  # value desc, ties by label asc
    return tuple(sorted(pairs.items(), key=key))


@dataclass(frozen=True)
class SchemaGraph:
    """Type-level summary of a property graph: instance and edge counts per type."""

    type_nodes: dict[str, int]
    type_edges: dict[tuple[str, str, str], int]

    def to_payload(self) -> dict[str, Any]:
        return {
            "type_nodes": dict(sorted(self.type_nodes.items())),
            "type_edges": [
                {"src_type": s, "rel_type": r, "dst_type": d, "count": c}
                for (s, r, d), c in sorted(self.type_edges.items())
            ],
        }


class PropertyGraph:
    """Typed nodes and typed directed edges. Immutable after construction."""

    def __init__(self, nodes: list[Node], edges: list[Edge]):
        self.nodes: list[Node] = list(nodes)
        self.edges: list[Edge] = list(edges)
        self._by_id: dict[str, Node] = {}
        for node in self.nodes:
            if node.id in self._by_id:
                raise FormatError(f"duplicate node id: {node.id!r}")
            self._by_id[node.id] = node
        for i, edge in enumerate(self.edges):
            for endpoint in (edge.src, edge.dst):
                if endpoint not in self._by_id:
                    raise FormatError(
                        f"edge {i} ({edge.src!r} -{edge.rel_type!r}-> {edge.dst!r}) "
                        f"references missing node {endpoint!r}"
                    )
        self._out: dict[str, list[int]] = {n.id: [] for n in self.nodes}
        self._in: dict[str, list[int]] = {n.id: [] for n in self.nodes}
        for i, edge in enumerate(self.edges):
            self._out[edge.src].append(i)
            self._in[edge.dst].append(i)

    def node(self, node_id: str) -> Node:
        if node_id not in self._by_id:
            raise NotFoundError(f"unknown node: {node_id!r}")
        return self._by_id[node_id]

    def has_node(self, node_id: str) -> bool:
        return node_id in self._by_id

    def out_edges(self, node_id: str) -> list[int]:
        return self._out.get(node_id, [])

    def in_edges(self, node_id: str) -> list[int]:
        return self._in.get(node_id, [])

    def node_types(self) -> set[str]:
        return {n.node_type for n in self.nodes}

    def to_payload(self) -> dict[str, Any]:
        """Serialize in the graph-file schema, deterministically ordered."""
        return {
            "nodes": [
                {"id": n.id, "type": n.node_type, "title": n.title, "attrs": n.attrs}
                for n in sorted(self.nodes, key=lambda n: n.id)
            ],
            "edges": [
                {"src": e.src, "dst": e.dst, "type": e.rel_type, "attrs": e.attrs}
                for e in sorted(self.edges, key=lambda e: (e.src, e.rel_type, e.dst))
            ],
        }


def graph_from_obj(doc: Any) -> PropertyGraph:
    """Build a PropertyGraph from the parsed graph-file document."""
    if not isinstance(doc, dict):
        raise FormatError("graph document must be a JSON object")
    for key in ("nodes", "edges"):
        if key not in doc or not isinstance(doc[key], list):
            raise FormatError(f"graph document needs a {key!r} list")
    nodes = []
    for i, raw in enumerate(doc["nodes"]):
        try:
            nodes.append(
                Node(
                    id=str(raw["id"]),
                    node_type=str(raw["type"]),
                    title=str(raw["title"]),
                    attrs=dict(raw.get("attrs") or {}),
                )
            )
        except (KeyError, TypeError) as exc:
            raise FormatError(f"node {i} is malformed: {exc}") from exc
    edges = []
    for i, raw in enumerate(doc["edges"]):
        try:
            edges.append(
                Edge(
                    src=str(raw["src"]),
                    dst=str(raw["dst"]),
                    rel_type=str(raw["type"]),
                    attrs=dict(raw.get("attrs") or {}),
                )
            )
        except (KeyError, TypeError) as exc:
            raise FormatError(f"edge {i} is malformed: {exc}") from exc
    return PropertyGraph(nodes, edges)


def load_graph(path: str | Path) -> PropertyGraph:
    """Load and validate a graph file. FormatError on any schema violation."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"graph file is not valid JSON: {exc}") from exc
    return graph_from_obj(doc)


def compute_schema(g: PropertyGraph) -> SchemaGraph:
    """Count node instances per type and edges per (src_type, rel_type, dst_type)."""
    type_nodes = Counter(n.node_type for n in g.nodes)
    type_edges = Counter(
        (g.node(e.src).node_type, e.rel_type, g.node(e.dst).node_type) for e in g.edges
    )
    return SchemaGraph(type_nodes=dict(type_nodes), type_edges=dict(type_edges))


def _require_node_type(g: PropertyGraph, node_type: str) -> None:
    if node_type not in g.node_types():
        raise NotFoundError(f"unknown node type: {node_type!r}")


def _instance_labels(instances: list[Node]) -> dict[str, str]:
    """Map node id -> chart label. Titles are the labels; nodes sharing a title
    get the id appended so labels stay unique."""
    title_counts = Counter(n.title for n in instances)
    return {
        n.id: n.title if title_counts[n.title] == 1 else f"{n.title} ({n.id})"
        for n in instances
    }


def node_distribution(
    g: PropertyGraph,
    node_type: Optional[str],
    rel_type: Optional[str] = None,
    direction: Optional[str | Direction] = None,
) -> Distribution:
    """Per-instance degree of every node of ``node_type``, labeled by title.

    The degree counts incident edges restricted to ``rel_type`` and
    ``direction`` when given (each edge counted once per incidence, so a
    self-loop contributes 2 under direction "both"). ``node_type=None`` covers
    every node in the graph, which is what an unselected widget displays.
    Sorted by value descending, ties broken by label ascending.
    """
    if node_type is not None:
        _require_node_type(g, node_type)
    direction = coerce_direction(direction)
    instances = [n for n in g.nodes if node_type is None or n.node_type == node_type]
    labels = _instance_labels(instances)
    values: dict[str, float] = {}
    for n in instances:
        degree = 0
        if direction in (Direction.OUT, Direction.BOTH):
            degree += sum(1 for i in g.out_edges(n.id) if rel_type is None or g.edges[i].rel_type == rel_type)
        if direction in (Direction.IN, Direction.BOTH):
            degree += sum(1 for i in g.in_edges(n.id) if rel_type is None or g.edges[i].rel_type == rel_type)
        values[labels[n.id]] = degree
    return Distribution(entries=_sort_entries(values, SortOrder.VALUE_DESC))


def relation_distribution(
    g: PropertyGraph,
    node_type: Optional[str],
    direction: str | Direction,
) -> Distribution:
    """Edge count per relation type incident to instances of ``node_type``.

    Under direction "both" each edge is counted once even when both of its
    endpoints have the requested type.
    """
    if node_type is not None:
        _require_node_type(g, node_type)
    direction = coerce_direction(direction)
    counts: Counter[str] = Counter()
    for edge in g.edges:
        hit_out = node_type is None or g.node(edge.src).node_type == node_type
        hit_in = node_type is None or g.node(edge.dst).node_type == node_type
        if direction is Direction.OUT:
            hit = hit_out
        elif direction is Direction.IN:
            hit = hit_in
        else:
            hit = hit_out or hit_in
        if hit:
            counts[edge.rel_type] += 1
    return Distribution(entries=_sort_entries(dict(counts), SortOrder.VALUE_DESC))


def subgraph(
    g: PropertyGraph,
    node_id: str,
    hops: int,
    direction: str | Direction = Direction.BOTH,
) -> PropertyGraph:
    """Nodes reachable from ``node_id`` within ``hops`` under ``direction``,
    plus the edges traversed to reach them.

    Breadth-first: every node at depth < hops is expanded, and every conforming
    edge incident to an expanded node is included (even when its far endpoint
    was already visited), so with direction "both" and hops at least the
    component diameter the whole weakly connected component comes back.
    """
    g.node(node_id)
    if hops < 1:
        raise ContractError(f"hops must be >= 1, got {hops}")
    direction = coerce_direction(direction)
    visited = {node_id}
    edge_ids: set[int] = set()
    frontier = [node_id]
    for _ in range(hops):
        next_frontier: list[str] = []
        for current in frontier:
            incident: list[tuple[int, str]] = []
            if direction in (Direction.OUT, Direction.BOTH):
                incident += [(i, g.edges[i].dst) for i in g.out_edges(current)]
            if direction in (Direction.IN, Direction.BOTH):
                incident += [(i, g.edges[i].src) for i in g.in_edges(current)]
            for edge_id, neighbor in incident:
                edge_ids.add(edge_id)
                if neighbor not in visited:
                    visited.add(neighbor)
                    next_frontier.append(neighbor)
        if not next_frontier:
            break
        frontier = next_frontier
    nodes = [n for n in g.nodes if n.id in visited]
    edges = [g.edges[i] for i in sorted(edge_ids)]
    return PropertyGraph(nodes, edges)


def filter_by_relation(
    g: PropertyGraph,
    node_type: str,
    rel_type: str,
    direction: str | Direction,
) -> list[str]:
    """Ids of ``node_type`` instances touched by at least one ``rel_type`` edge
    under ``direction``, sorted by id."""
    _require_node_type(g, node_type)
    direction = coerce_direction(direction)
    matched: set[str] = set()
    for edge in g.edges:
        if edge.rel_type != rel_type:
            continue
        if direction in (Direction.OUT, Direction.BOTH) and g.node(edge.src).node_type == node_type:
            matched.add(edge.src)
        if direction in (Direction.IN, Direction.BOTH) and g.node(edge.dst).node_type == node_type:
            matched.add(edge.dst)
    return sorted(matched)


def neighbor_ids(
    g: PropertyGraph,
    node_id: str,
    rel_type: Optional[str] = None,
    direction: str | Direction = Direction.BOTH,
) -> list[str]:
    """Ids of nodes adjacent to ``node_id`` via ``rel_type`` under ``direction``,
    sorted by id. Backs relation-based graph filtering from a selected node."""
    g.node(node_id)
    direction = coerce_direction(direction)
    found: set[str] = set()
    if direction in (Direction.IN, Direction.BOTH):
        for i in g.in_edges(node_id):
            if rel_type is None or g.edges[i].rel_type == rel_type:
                found.add(g.edges[i].src)
    if direction in (Direction.OUT, Direction.BOTH):
        for i in g.out_edges(node_id):
            if rel_type is None or g.edges[i].rel_type == rel_type:
                found.add(g.edges[i].dst)
    return sorted(found)
