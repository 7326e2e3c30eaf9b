"""Append-only state store: every interaction yields a new immutable snapshot.

One ``StateStore`` backs one widget. Each recorded interaction appends an
``ActionRecord`` to the action history and a ``DataState`` (a full snapshot of
the widget's front-end-relevant payload) to the state list. Neither list is
ever rewound or mutated; restoring an old state appends a fresh copy of it.
"""

from __future__ import annotations

import copy
import json
import threading
import time
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from .errors import ContractError, NotFoundError, PayloadError


class InteractionType(str, Enum):
    """Every kind of event the history can record."""

    INIT = "init"
    SELECT = "select"
    DESELECT = "deselect"
    PAN = "pan"
    ZOOM = "zoom"
    FILTER = "filter"
    SORT = "sort"
    INPUT = "input"
    SET_DECISION = "set_decision"
    RESTORE = "restore"
    OVERRIDE = "override"
    CLEAR_OVERRIDE = "clear_override"


def coerce_interaction_type(value: Any) -> InteractionType:
    """Turn a string or member into an InteractionType, or raise ContractError."""
    if isinstance(value, InteractionType):
        return value
    try:
        return InteractionType(value)
    except ValueError:
        raise ContractError(f"unknown interaction_type: {value!r}") from None


def snapshot(value: Any) -> Any:
    """Deep-copy ``value`` through the JSON export format.

    Normalizes tuples to lists and enum members to their values, and proves the
    value is exportable. Raises PayloadError for cyclic or non-serializable input.
    """
    try:
        return json.loads(json.dumps(value))
    except (TypeError, ValueError) as exc:
        raise PayloadError(f"payload is not serializable: {exc}") from exc


@dataclass(frozen=True)
class DataState:
    """One full snapshot of a widget's payload. Never mutated after creation."""

    state_id: int
    payload: Any
    created_at: int  # UTC, milliseconds
    origin_action_id: int


@dataclass(frozen=True)
class ActionRecord:
    """One recorded interaction and the state it produced."""

    action_id: int
    timestamp: int  # UTC, milliseconds
    interaction_type: InteractionType
    component_id: str
    element: dict[str, Any]
    params: Any
    result_state_id: int

    def to_log_obj(self) -> dict[str, Any]:
        """The on-disk journal form; field names are part of the file format."""
        return {
            "action_id": self.action_id,
            "timestamp": self.timestamp,
            "interaction_type": self.interaction_type.value,
            "component_id": self.component_id,
            "element": self.element,
            "params": self.params,
            "result_state_id": self.result_state_id,
        }


@dataclass
class ActionContext:
    """What a caller knows about an interaction before it is recorded."""

    interaction_type: InteractionType | str
    component_id: str = "widget"
    element: Optional[dict[str, Any]] = None
    params: Any = field(default_factory=dict)


def _now_ms() -> int:
    return int(time.time() * 1000)


class StateStore:
    """Append-only history of (ActionRecord, DataState) pairs for one widget.

    All mutations are serialized through one internal lock (the widget's
    mutation queue); reads only touch already-appended immutable entries and
    may run concurrently.

    If ``log_path`` is given, every record is also journaled to that file as
    newline-delimited JSON so the session can be replayed later.
    """

    def __init__(self, widget_id: str, widget_type: str, log_path: str | Path | None = None):
        self.widget_id = widget_id
        self.widget_type = widget_type
        self._states: list[DataState] = []
        self._records: list[ActionRecord] = []
        self._mutation_lock = threading.RLock()
        self._log_path = Path(log_path) if log_path is not None else None

    # -- mutations ----------------------------------------------------------

    def record_action(self, context: ActionContext, new_payload: Any) -> tuple[ActionRecord, DataState]:
        """Append a new state snapshot plus the record of the interaction that produced it.

        State ids and action ids are assigned strictly monotonically, starting
        at 0. Raises PayloadError if the payload cannot be serialized and
        ContractError for an unknown interaction type; nothing is appended on error.
        """
        itype = coerce_interaction_type(context.interaction_type)
        payload = snapshot(new_payload)
        element = snapshot(context.element) if context.element is not None else {"path": "", "datum": None}
        if "path" not in element:
            element["path"] = ""
        element.setdefault("datum", None)
        params = snapshot(context.params)

        with self._mutation_lock:
            next_id = len(self._records)
            now = _now_ms()
            state = DataState(
                state_id=next_id,
                payload=payload,
                created_at=now,
                origin_action_id=next_id,
            )
            record = ActionRecord(
                action_id=next_id,
                timestamp=now,
                interaction_type=itype,
                component_id=context.component_id,
                element=element,
                params=params,
                result_state_id=next_id,
            )
            self._states.append(state)
            self._records.append(record)
            self._journal(record)
            return record, state

    def restore(self, state_id: int) -> DataState:
        """Load a previous state by appending a fresh copy of it.

        The history is never rewound: a restore is itself an interaction, so it
        appends an ActionRecord (with the restored-from id in its params) and a
        new DataState whose payload is deep-equal to the old one.
        """
        with self._mutation_lock:
            source = self.get_state(state_id)
            context = ActionContext(
                interaction_type=InteractionType.RESTORE,
                component_id="widget",
                element={"path": f"state/{state_id}", "datum": None},
                params={"restored_from": state_id},
            )
            _, state = self.record_action(context, source.payload)
            return state

    # -- reads --------------------------------------------------------------

    def get_state(self, state_id: int) -> DataState:
        """Return the stored snapshot; the payload is a defensive copy."""
        if not isinstance(state_id, int) or isinstance(state_id, bool) or state_id < 0 or state_id >= len(self._states):
            raise NotFoundError(f"unknown state_id: {state_id!r}")
        stored = self._states[state_id]
        return replace(stored, payload=copy.deepcopy(stored.payload))

    @property
    def current_state_id(self) -> int:
        if not self._states:
            raise NotFoundError("no states recorded yet")
        return self._states[-1].state_id

    def current_state(self) -> DataState:
        return self.get_state(self.current_state_id)

    def export_state(self, state_id: int | None = None) -> dict[str, Any]:
        """Build the export document for a state (the current one by default).

        The result is reusable outside the widget: plain JSON with keys
        widget_id, widget_type, state_id, exported_at, payload.
        """
        if state_id is None:
            state_id = self.current_state_id
        state = self.get_state(state_id)
        return {
            "widget_id": self.widget_id,
            "widget_type": self.widget_type,
            "state_id": state.state_id,
            "exported_at": datetime.now(timezone.utc).isoformat(),
            "payload": state.payload,
        }

    def history_list(self, range: dict[str, int] | None = None) -> list[ActionRecord]:
        """Return the history, or the contiguous slice selected by
        ``{"from_action_id": ..., "to_action_id": ...}`` (both inclusive, both optional)."""
        records = list(self._records)
        if range is None:
            return records
        lo = range.get("from_action_id", 0)
        hi = range.get("to_action_id", len(records) - 1)
        if lo > hi:
            raise ContractError(f"inverted range: from_action_id {lo} > to_action_id {hi}")
        return [r for r in records if lo <= r.action_id <= hi]

    def __len__(self) -> int:
        return len(self._records)

    # -- journaling ---------------------------------------------------------

    def _journal(self, record: ActionRecord) -> None:
        if self._log_path is None:
            return
        with self._log_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record.to_log_obj()) + "\n")
