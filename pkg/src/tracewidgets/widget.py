"""Stateful widget lifecycle: component declaration, dispatch routing, overrides.

A widget is assembled from a ``WidgetSpec`` (what the frontend renders), a data
backend, a ``SharedActionRegistry`` with the widget's data operations, and a
table of named handlers that bindings in the component specs refer to. Every
mutation goes through the widget's single mutation lock and ends in exactly one
``StateStore.record_action`` call, so the history gains exactly one record and
one state per successful interaction.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Optional

from .actions import OverrideOp, SharedActionRegistry
from .errors import BackendError, ContractError, NotFoundError, WidgetError
from .protocol import ActionDispatchBody, CommState
from .state import ActionContext, ActionRecord, DataState, InteractionType, StateStore, coerce_interaction_type


class ComponentKind(str, Enum):
    GRAPH = "graph"
    BAR_CHART = "bar_chart"
    TABLE = "table"
    DECISION_TABLE = "decision_table"
    TEXT_PANEL = "text_panel"


@dataclass(frozen=True)
class ComponentSpec:
    """One interactive component of a widget.

    ``bindings`` maps an interaction type (by value, e.g. ``"select"``) to the
    name of the handler that serves it; ``data_key`` is the payload key this
    component renders.
    """

    component_id: str
    kind: ComponentKind
    title: str
    bindings: dict[str, str]
    data_key: str

    def to_payload(self) -> dict[str, Any]:
        return {
            "component_id": self.component_id,
            "kind": self.kind.value,
            "title": self.title,
            "bindings": dict(self.bindings),
            "data_key": self.data_key,
        }


@dataclass
class WidgetSpec:
    """Everything a widget author declares about one widget instance."""

    widget_id: str
    widget_type: str
    components: list[ComponentSpec]
    shared_actions: list[str]
    init_overrides: dict[str, OverrideOp] = field(default_factory=dict)


Handler = Callable[["Widget", ActionDispatchBody], dict[str, Any]]
Recompute = Callable[["Widget", set[str]], dict[str, Any]]


class Widget:
    """A live stateful widget: one state store, one registry, one mutation lock."""

    def __init__(
        self,
        spec: WidgetSpec,
        backend: Any,
        *,
        registry: SharedActionRegistry,
        handlers: dict[str, Handler],
        build_initial_payload: Callable[["Widget"], dict[str, Any]],
        recompute: Optional[Recompute] = None,
        log_path: str | Path | None = None,
    ):
        self.spec = spec
        self.backend = backend
        self.registry = registry
        self.comm = CommState()
        self._handlers = dict(handlers)
        self._recompute = recompute
        self._lock = threading.RLock()
        self._components = {c.component_id: c for c in spec.components}

        self._validate_spec()
        self.store = StateStore(spec.widget_id, spec.widget_type, log_path=log_path)

        init_sources: dict[str, str] = {}
        for name, fn in spec.init_overrides.items():
            if not registry.is_registered(name):
                raise NotFoundError(f"init override names unknown shared action: {name!r}")
            init_sources[name] = registry.set_override(name, fn)

        try:
            payload = build_initial_payload(self)
        except WidgetError:
            raise
        except Exception as exc:
            raise BackendError(f"backend failed while computing the initial payload: {exc}") from exc

        self.store.record_action(
            ActionContext(
                interaction_type=InteractionType.INIT,
                component_id="widget",
                element={"path": "widget", "datum": None},
                params={"init_overrides": init_sources},
            ),
            payload,
        )

    def _validate_spec(self) -> None:
        spec = self.spec
        if len({c.component_id for c in spec.components}) != len(spec.components):
            raise ContractError("component ids must be unique per widget")
        for comp in spec.components:
            if not isinstance(comp.kind, ComponentKind):
                raise ContractError(f"unknown component kind: {comp.kind!r}")
            for itype, handler_name in comp.bindings.items():
                coerce_interaction_type(itype)
                if handler_name not in self._handlers:
                    raise ContractError(
                        f"component {comp.component_id!r} binds {itype!r} to "
                        f"unknown handler {handler_name!r}"
                    )
        for name in spec.shared_actions:
            if not self.registry.is_registered(name):
                raise ContractError(f"shared action {name!r} is not registered")

    # -- identity -------------------------------------------------------------

    @property
    def widget_id(self) -> str:
        return self.spec.widget_id

    @property
    def widget_type(self) -> str:
        return self.spec.widget_type

    @property
    def components(self) -> list[ComponentSpec]:
        return list(self.spec.components)

    def has_component(self, component_id: str) -> bool:
        return component_id in self._components

    def component(self, component_id: str) -> ComponentSpec:
        if component_id not in self._components:
            raise NotFoundError(f"unknown component: {component_id!r}")
        return self._components[component_id]

    def render_spec(self) -> dict[str, Any]:
        """The body of the render_spec message sent to a frontend."""
        return {
            "widget_type": self.widget_type,
            "components": [c.to_payload() for c in self.spec.components],
        }

    # -- state accessors --------------------------------------------------------

    def current_payload(self) -> dict[str, Any]:
        return self.store.current_state().payload

    @property
    def current_state_id(self) -> int:
        return self.store.current_state_id

    def history(self) -> list[ActionRecord]:
        return self.store.history_list()

    def invoke_action(self, name: str, params: Any) -> Any:
        """Run a shared action (override-aware); exposed to handlers and notebooks."""
        return self.registry.invoke(name, params)

    # -- interactions -----------------------------------------------------------

    def handle_action(self, dispatch: ActionDispatchBody) -> DataState:
        """Route a dispatched interaction to its bound handler and record the result.

        Raises ContractError when the (component, interaction) pair is unbound
        and propagates handler failures (UdfError, NotFoundError); the history
        and current state are untouched on any failure.
        """
        with self._lock:
            if not self.has_component(dispatch.component_id):
                raise ContractError(f"dispatch names unknown component: {dispatch.component_id!r}")
            component = self._components[dispatch.component_id]
            handler_name = component.bindings.get(dispatch.interaction_type.value)
            if handler_name is None:
                raise ContractError(
                    f"component {dispatch.component_id!r} has no binding for "
                    f"{dispatch.interaction_type.value!r}"
                )
            updates = self._handlers[handler_name](self, dispatch)
            payload = {**self.current_payload(), **updates}
            _, state = self.store.record_action(
                ActionContext(
                    interaction_type=dispatch.interaction_type,
                    component_id=dispatch.component_id,
                    element=dispatch.element,
                    params=dispatch.params,
                ),
                payload,
            )
            return state

    def restore(self, state_id: int) -> DataState:
        """Load a previous state; appends to the history, never rewinds it."""
        with self._lock:
            return self.store.restore(state_id)

    def set_override(self, name: str, fn: OverrideOp, source_text: str | None = None) -> None:
        """Install a user override on a shared action and record it.

        The affected components are recomputed with the override in place and
        the new payload lands in a fresh state. If recomputation fails the
        override is rolled back and nothing is recorded.
        """
        with self._lock:
            entry = self.registry.entry(name)
            previous = (entry.override_op, entry.override_source)
            source = self.registry.set_override(name, fn, source_text)
            try:
                payload = {**self.current_payload(), **self._recompute_for(name)}
                self.store.record_action(
                    ActionContext(
                        interaction_type=InteractionType.OVERRIDE,
                        component_id="widget",
                        element={"path": f"shared_action/{name}", "datum": None},
                        params={"name": name, "source_text": source},
                    ),
                    payload,
                )
            except BaseException:
                entry.override_op, entry.override_source = previous
                raise

    def clear_override(self, name: str) -> None:
        """Remove a user override (a no-op when none is installed) and record it."""
        with self._lock:
            entry = self.registry.entry(name)
            previous = (entry.override_op, entry.override_source)
            self.registry.clear_override(name)
            try:
                payload = {**self.current_payload(), **self._recompute_for(name)}
                self.store.record_action(
                    ActionContext(
                        interaction_type=InteractionType.CLEAR_OVERRIDE,
                        component_id="widget",
                        element={"path": f"shared_action/{name}", "datum": None},
                        params={"name": name},
                    ),
                    payload,
                )
            except BaseException:
                entry.override_op, entry.override_source = previous
                raise

    def _recompute_for(self, name: str) -> dict[str, Any]:
        if self._recompute is None:
            return {}
        return self._recompute(self, {name})

    # -- views and export ---------------------------------------------------------

    def history_view_model(self) -> list[dict[str, Any]]:
        """Rows for the history view, one per record, synchronized at call time."""
        return [
            {
                "action_id": r.action_id,
                "interaction_type": r.interaction_type.value,
                "component_id": r.component_id,
                "summary": _summarize(r),
                "state_id": r.result_state_id,
                "restorable": True,
            }
            for r in self.store.history_list()
        ]

    def export_data(self, state_id: int | None = None) -> dict[str, Any]:
        """Export a state (current by default) as a plain JSON document."""
        return self.store.export_state(state_id)


def init(
    spec: WidgetSpec,
    backend: Any,
    *,
    registry: SharedActionRegistry,
    handlers: dict[str, Handler],
    build_initial_payload: Callable[[Widget], dict[str, Any]],
    recompute: Optional[Recompute] = None,
    log_path: str | Path | None = None,
) -> Widget:
    """Bring a widget to life: install instantiation-time overrides, compute the
    initial payload through the shared actions, and record state 0."""
    return Widget(
        spec,
        backend,
        registry=registry,
        handlers=handlers,
        build_initial_payload=build_initial_payload,
        recompute=recompute,
        log_path=log_path,
    )


def _summarize(record: ActionRecord) -> str:
    itype = record.interaction_type
    if itype is InteractionType.INIT:
        return "widget initialized"
    if itype is InteractionType.RESTORE:
        return f"restored state {record.params.get('restored_from')}"
    if itype is InteractionType.OVERRIDE:
        return f"override installed for {record.params.get('name')}"
    if itype is InteractionType.CLEAR_OVERRIDE:
        return f"override cleared for {record.params.get('name')}"
    detail = _brief(record.element.get("datum")) or _brief(record.params)
    base = f"{itype.value} on {record.component_id}"
    return f"{base}: {detail}" if detail else base


def _brief(value: Any, limit: int = 3) -> str:
    if not isinstance(value, dict) or not value:
        return ""
    parts = [f"{k}={v!r}" for k, v in list(value.items())[:limit]]
    if len(value) > limit:
        parts.append("...")
    return ", ".join(parts)
