"""The two demo widgets over the property-graph backend.

``make_explorer`` builds the graph exploration widget: a schema component
coordinated with a node-degree chart and a relation chart; selecting a node
type recomputes both charts in a single state transition, and selecting a bar
plus a relation choice filters the graph to that node's neighbors.

``make_alignment_widget`` builds the alignment verification widget: a decision
table of candidates, a corpus-context panel, and the selected entity's
neighborhood sub-graph (a shared action users typically override to declutter).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from . import graph as gb
from .actions import SharedActionRegistry
from .errors import ContractError, FormatError, NotFoundError
from .protocol import ActionDispatchBody
from .state import DataState, InteractionType
from .widget import ComponentKind, ComponentSpec, Widget, WidgetSpec, init


class Decision(str, Enum):
    UNDECIDED = "undecided"
    INSERT = "insert"
    IGNORE = "ignore"
    DEFER = "defer"


@dataclass(frozen=True)
class AlignmentCandidate:
    """A (corpus term, graph entity) pair awaiting a merge decision."""

    candidate_id: str
    corpus_term: str
    corpus_descriptions: tuple[str, ...]
    graph_entity_id: str
    decision: Decision = Decision.UNDECIDED


def load_candidates(path: str | Path) -> list[AlignmentCandidate]:
    """Read a candidates file: a JSON array of candidate objects (decision omitted)."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"candidates file is not valid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise FormatError("candidates file must be a JSON array")
    candidates = []
    for i, obj in enumerate(raw):
        try:
            candidates.append(
                AlignmentCandidate(
                    candidate_id=str(obj["candidate_id"]),
                    corpus_term=str(obj["corpus_term"]),
                    corpus_descriptions=tuple(str(d) for d in obj["corpus_descriptions"]),
                    graph_entity_id=str(obj["graph_entity_id"]),
                )
            )
        except (KeyError, TypeError) as exc:
            raise FormatError(f"candidate {i} is malformed: {exc}") from exc
    return candidates


# -- shared helpers -----------------------------------------------------------


def _datum(dispatch: ActionDispatchBody, key: str) -> Any:
    datum = dispatch.element.get("datum")
    if isinstance(datum, dict) and key in datum:
        return datum[key]
    if isinstance(dispatch.params, dict) and key in dispatch.params:
        return dispatch.params[key]
    raise ContractError(f"dispatch carries no {key!r} in element datum or params")


def _params_get(dispatch: ActionDispatchBody, key: str, default: Any = None) -> Any:
    if isinstance(dispatch.params, dict):
        return dispatch.params.get(key, default)
    return default


def _number(dispatch: ActionDispatchBody, key: str, default: float) -> float:
    value = _params_get(dispatch, key, default)
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ContractError(f"param {key!r} must be a number, got {value!r}") from None


def _pan_viewport(widget: Widget, dispatch: ActionDispatchBody) -> dict[str, Any]:
    viewport = dict(widget.current_payload().get("viewport") or {})
    current = viewport.get(dispatch.component_id) or {"pan": [0.0, 0.0], "zoom": 1.0}
    dx = _number(dispatch, "dx", 0.0)
    dy = _number(dispatch, "dy", 0.0)
    viewport[dispatch.component_id] = {
        "pan": [current["pan"][0] + dx, current["pan"][1] + dy],
        "zoom": current["zoom"],
    }
    return {"viewport": viewport}


def _zoom_viewport(widget: Widget, dispatch: ActionDispatchBody) -> dict[str, Any]:
    viewport = dict(widget.current_payload().get("viewport") or {})
    current = viewport.get(dispatch.component_id) or {"pan": [0.0, 0.0], "zoom": 1.0}
    scale = _number(dispatch, "scale", current["zoom"])
    viewport[dispatch.component_id] = {"pan": list(current["pan"]), "zoom": scale}
    return {"viewport": viewport}


# -- Explorer -----------------------------------------------------------------


def _register_explorer_actions(registry: SharedActionRegistry, graph: gb.PropertyGraph) -> None:
    def get_schema(params: Any) -> dict[str, Any]:
        return gb.compute_schema(graph).to_payload()

    def get_node_distribution(params: Any) -> list[list[Any]]:
        p = params or {}
        dist = gb.node_distribution(graph, p.get("node_type"), p.get("rel_type"), p.get("direction"))
        return dist.to_payload()

    def get_relation_distribution(params: Any) -> dict[str, Any]:
        node_type = (params or {}).get("node_type")
        labeled: dict[str, Any] = {}
        for direction, tag in ((gb.Direction.IN, "incoming"), (gb.Direction.OUT, "outgoing")):
            for label, value in gb.relation_distribution(graph, node_type, direction).entries:
                labeled[f"{label}({tag})"] = value
        return labeled

    registry.register_default("get_schema", get_schema)
    registry.register_default("get_node_distribution", get_node_distribution)
    registry.register_default("get_relation_distribution", get_relation_distribution)


def _resolve_node(graph: gb.PropertyGraph, widget: Widget, dispatch: ActionDispatchBody) -> gb.Node:
    datum = dispatch.element.get("datum")
    datum = datum if isinstance(datum, dict) else {}
    node_id = datum.get("node_id") or _params_get(dispatch, "node_id")
    if node_id is not None:
        return graph.node(node_id)
    label = datum.get("label") or _params_get(dispatch, "label")
    if label is None:
        raise ContractError("dispatch carries neither a node_id nor a bar label")
    selection = (widget.current_payload().get("selection") or {}).get("node_type")
    pool = [n for n in graph.nodes if selection is None or n.node_type == selection]
    matches = [n for n in pool if n.title == label or f"{n.title} ({n.id})" == label]
    if len(matches) != 1:
        raise NotFoundError(f"bar label {label!r} matches {len(matches)} nodes")
    return matches[0]


def make_explorer(
    graph: gb.PropertyGraph,
    *,
    widget_id: str = "explorer",
    init_overrides: Optional[dict[str, Any]] = None,
    log_path: str | Path | None = None,
) -> Widget:
    """Build the graph exploration widget over a loaded property graph."""
    registry = SharedActionRegistry()
    _register_explorer_actions(registry, graph)

    def select_node_type(widget: Widget, dispatch: ActionDispatchBody) -> dict[str, Any]:
        node_type = _datum(dispatch, "node_type")
        return {
            "selection": {"node_type": node_type},
            "node_distribution": widget.invoke_action("get_node_distribution", {"node_type": node_type}),
            "relation_distribution": widget.invoke_action("get_relation_distribution", {"node_type": node_type}),
        }

    def deselect_node_type(widget: Widget, dispatch: ActionDispatchBody) -> dict[str, Any]:
        return {
            "selection": {"node_type": None},
            "node_distribution": widget.invoke_action("get_node_distribution", {"node_type": None}),
            "relation_distribution": widget.invoke_action("get_relation_distribution", {"node_type": None}),
        }

    def filter_by_relation(widget: Widget, dispatch: ActionDispatchBody) -> dict[str, Any]:
        node = _resolve_node(graph, widget, dispatch)
        rel_type = _params_get(dispatch, "rel_type")
        direction = _params_get(dispatch, "direction", "both")
        return {"filtered_nodes": gb.neighbor_ids(graph, node.id, rel_type, direction)}

    def build_initial_payload(widget: Widget) -> dict[str, Any]:
        return {
            "schema": widget.invoke_action("get_schema", {}),
            "node_distribution": widget.invoke_action("get_node_distribution", {"node_type": None}),
            "relation_distribution": widget.invoke_action("get_relation_distribution", {"node_type": None}),
            "filtered_nodes": [],
            "selection": {"node_type": None},
            "viewport": {},
        }

    def recompute(widget: Widget, names: set[str]) -> dict[str, Any]:
        selection = (widget.current_payload().get("selection") or {}).get("node_type")
        updates: dict[str, Any] = {}
        if "get_schema" in names:
            updates["schema"] = widget.invoke_action("get_schema", {})
        if "get_node_distribution" in names:
            updates["node_distribution"] = widget.invoke_action("get_node_distribution", {"node_type": selection})
        if "get_relation_distribution" in names:
            updates["relation_distribution"] = widget.invoke_action("get_relation_distribution", {"node_type": selection})
        return updates

    spec = WidgetSpec(
        widget_id=widget_id,
        widget_type="explorer",
        components=[
            ComponentSpec(
                component_id="schema-graph",
                kind=ComponentKind.GRAPH,
                title="Graph schema",
                bindings={
                    "select": "select_node_type",
                    "deselect": "deselect_node_type",
                    "pan": "pan_viewport",
                    "zoom": "zoom_viewport",
                },
                data_key="schema",
            ),
            ComponentSpec(
                component_id="node-dist",
                kind=ComponentKind.BAR_CHART,
                title="Node distribution",
                bindings={"select": "filter_by_relation"},
                data_key="node_distribution",
            ),
            ComponentSpec(
                component_id="rel-dist",
                kind=ComponentKind.BAR_CHART,
                title="Relation distribution",
                bindings={},
                data_key="relation_distribution",
            ),
        ],
        shared_actions=registry.names(),
        init_overrides=dict(init_overrides or {}),
    )
    handlers = {
        "select_node_type": select_node_type,
        "deselect_node_type": deselect_node_type,
        "filter_by_relation": filter_by_relation,
        "pan_viewport": _pan_viewport,
        "zoom_viewport": _zoom_viewport,
    }
    return init(
        spec,
        graph,
        registry=registry,
        handlers=handlers,
        build_initial_payload=build_initial_payload,
        recompute=recompute,
        log_path=log_path,
    )


# -- Alignment verification ----------------------------------------------------


def _empty_graph_payload() -> dict[str, Any]:
    return {"nodes": [], "edges": []}


def make_alignment_widget(
    graph: gb.PropertyGraph,
    candidates: list[AlignmentCandidate],
    *,
    widget_id: str = "alignment",
    init_overrides: Optional[dict[str, Any]] = None,
    log_path: str | Path | None = None,
) -> Widget:
    """Build the alignment verification widget for a candidate list."""
    seen: set[str] = set()
    for candidate in candidates:
        if candidate.candidate_id in seen:
            raise FormatError(f"duplicate candidate_id: {candidate.candidate_id!r}")
        seen.add(candidate.candidate_id)
        if not graph.has_node(candidate.graph_entity_id):
            raise FormatError(
                f"candidate {candidate.candidate_id!r} references missing graph "
                f"entity {candidate.graph_entity_id!r}"
            )

    registry = SharedActionRegistry()

    def get_subgraph(params: Any) -> dict[str, Any]:
        p = params or {}
        node_id = p.get("node_id")
        if node_id is None:
            return _empty_graph_payload()
        hops = int(p.get("hops", 1))
        direction = p.get("direction", "both")
        return gb.subgraph(graph, node_id, hops, direction).to_payload()

    registry.register_default("get_subgraph", get_subgraph)

    def select_candidate(widget: Widget, dispatch: ActionDispatchBody) -> dict[str, Any]:
        candidate_id = _datum(dispatch, "candidate_id")
        table = widget.current_payload()["candidates"]
        if candidate_id not in table:
            raise NotFoundError(f"unknown candidate: {candidate_id!r}")
        row = table[candidate_id]
        return {
            "selection": {"candidate_id": candidate_id},
            "context": list(row["corpus_descriptions"]),
            "subgraph": widget.invoke_action("get_subgraph", {"node_id": row["graph_entity_id"]}),
        }

    def set_decision_handler(widget: Widget, dispatch: ActionDispatchBody) -> dict[str, Any]:
        candidate_id = _datum(dispatch, "candidate_id")
        raw = _params_get(dispatch, "decision")
        table = widget.current_payload()["candidates"]
        if candidate_id not in table:
            raise NotFoundError(f"unknown candidate: {candidate_id!r}")
        try:
            decision = Decision(raw)
        except ValueError:
            raise ContractError(f"invalid decision: {raw!r}") from None
        updated = {cid: dict(row) for cid, row in table.items()}
        updated[candidate_id]["decision"] = decision.value
        return {"candidates": updated}

    def build_initial_payload(widget: Widget) -> dict[str, Any]:
        return {
            "candidates": {
                c.candidate_id: {
                    "candidate_id": c.candidate_id,
                    "corpus_term": c.corpus_term,
                    "corpus_descriptions": list(c.corpus_descriptions),
                    "graph_entity_id": c.graph_entity_id,
                    "decision": c.decision.value,
                }
                for c in candidates
            },
            "context": [],
            "subgraph": widget.invoke_action("get_subgraph", {}),
            "selection": {"candidate_id": None},
            "viewport": {},
        }

    def recompute(widget: Widget, names: set[str]) -> dict[str, Any]:
        if "get_subgraph" not in names:
            return {}
        payload = widget.current_payload()
        candidate_id = (payload.get("selection") or {}).get("candidate_id")
        if candidate_id is None:
            return {}
        entity = payload["candidates"][candidate_id]["graph_entity_id"]
        return {"subgraph": widget.invoke_action("get_subgraph", {"node_id": entity})}

    spec = WidgetSpec(
        widget_id=widget_id,
        widget_type="alignment",
        components=[
            ComponentSpec(
                component_id="candidates",
                kind=ComponentKind.DECISION_TABLE,
                title="Alignment candidates",
                bindings={"select": "select_candidate", "set_decision": "set_decision"},
                data_key="candidates",
            ),
            ComponentSpec(
                component_id="context",
                kind=ComponentKind.TABLE,
                title="Corpus context",
                bindings={},
                data_key="context",
            ),
            ComponentSpec(
                component_id="subgraph",
                kind=ComponentKind.GRAPH,
                title="Entity neighborhood",
                bindings={"pan": "pan_viewport", "zoom": "zoom_viewport"},
                data_key="subgraph",
            ),
        ],
        shared_actions=registry.names(),
        init_overrides=dict(init_overrides or {}),
    )
    handlers = {
        "select_candidate": select_candidate,
        "set_decision": set_decision_handler,
        "pan_viewport": _pan_viewport,
        "zoom_viewport": _zoom_viewport,
    }
    return init(
        spec,
        graph,
        registry=registry,
        handlers=handlers,
        build_initial_payload=build_initial_payload,
        recompute=recompute,
        log_path=log_path,
    )


def set_decision(widget: Widget, candidate_id: str, decision: Decision | str) -> DataState:
    """Assign a merge decision to a candidate; records one set_decision action."""
    dispatch = ActionDispatchBody(
        interaction_type=InteractionType.SET_DECISION,
        component_id="candidates",
        element={"path": f"candidates/{candidate_id}", "datum": {"candidate_id": candidate_id}},
        params={"candidate_id": candidate_id, "decision": decision.value if isinstance(decision, Decision) else decision},
    )
    return widget.handle_action(dispatch)
