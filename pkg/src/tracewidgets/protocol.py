"""Versioned message protocol between the kernel-side widget and any frontend.

The protocol is transport-agnostic: every message is one JSON document (a
frame) with top-level keys exactly ``protocol_version, widget_id, seq,
msg_type, body``. Sequence numbers increase strictly per (widget, direction);
each msg_type travels in exactly one direction. ``headless_session`` plays the
frontend role so the whole kernel side can be driven without a browser.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Any, Iterable, Optional

from .errors import ContractError, NotFoundError, PayloadError, ProtocolError, UdfError
from .state import InteractionType, coerce_interaction_type

if TYPE_CHECKING:
    from .widget import Widget

PROTOCOL_VERSION = "1.0"


class MsgType(str, Enum):
    READY = "ready"
    RENDER_SPEC = "render_spec"
    STATE_UPDATE = "state_update"
    HISTORY_UPDATE = "history_update"
    ACTION_DISPATCH = "action_dispatch"
    RESTORE_REQUEST = "restore_request"
    ERROR = "error"


class MessageDirection(str, Enum):
    FRONTEND_TO_KERNEL = "frontend_to_kernel"
    KERNEL_TO_FRONTEND = "kernel_to_frontend"


FRONTEND_TO_KERNEL_TYPES = frozenset({MsgType.READY, MsgType.ACTION_DISPATCH, MsgType.RESTORE_REQUEST})
KERNEL_TO_FRONTEND_TYPES = frozenset({MsgType.RENDER_SPEC, MsgType.STATE_UPDATE, MsgType.HISTORY_UPDATE, MsgType.ERROR})

_FRAME_KEYS = frozenset({"protocol_version", "widget_id", "seq", "msg_type", "body"})

# Dispatched interactions are user gestures; lifecycle records are minted
# kernel-side only.
_NON_DISPATCHABLE = frozenset({InteractionType.INIT, InteractionType.RESTORE, InteractionType.OVERRIDE})


@dataclass(frozen=True)
class ProtocolEnvelope:
    """One protocol frame."""

    protocol_version: str
    widget_id: str
    seq: int
    msg_type: MsgType
    body: Any

    def to_frame_obj(self) -> dict[str, Any]:
        return {
            "protocol_version": self.protocol_version,
            "widget_id": self.widget_id,
            "seq": self.seq,
            "msg_type": self.msg_type.value,
            "body": self.body,
        }


def make_envelope(widget_id: str, seq: int, msg_type: MsgType | str, body: Any) -> ProtocolEnvelope:
    return ProtocolEnvelope(
        protocol_version=PROTOCOL_VERSION,
        widget_id=widget_id,
        seq=seq,
        msg_type=MsgType(msg_type),
        body=body,
    )


def validate_envelope(envelope: ProtocolEnvelope, direction: MessageDirection | str | None = None) -> None:
    """Check envelope invariants; with ``direction``, also the direction rule."""
    if envelope.protocol_version != PROTOCOL_VERSION:
        raise ProtocolError(f"unsupported protocol_version: {envelope.protocol_version!r}")
    if not isinstance(envelope.widget_id, str):
        raise ProtocolError("widget_id must be a string")
    if not isinstance(envelope.seq, int) or isinstance(envelope.seq, bool) or envelope.seq < 0:
        raise ProtocolError(f"seq must be a non-negative integer, got {envelope.seq!r}")
    if not isinstance(envelope.msg_type, MsgType):
        raise ProtocolError(f"unknown msg_type: {envelope.msg_type!r}")
    if direction is not None:
        direction = MessageDirection(direction)
        allowed = (
            FRONTEND_TO_KERNEL_TYPES
            if direction is MessageDirection.FRONTEND_TO_KERNEL
            else KERNEL_TO_FRONTEND_TYPES
        )
        if envelope.msg_type not in allowed:
            raise ProtocolError(
                f"msg_type {envelope.msg_type.value!r} may not travel {direction.value}"
            )


def encode(envelope: ProtocolEnvelope, direction: MessageDirection | str | None = None) -> bytes:
    """Serialize to a UTF-8 JSON frame. ``decode(encode(e)) == e`` for valid envelopes."""
    validate_envelope(envelope, direction)
    try:
        return json.dumps(envelope.to_frame_obj()).encode("utf-8")
    except (TypeError, ValueError) as exc:
        raise ProtocolError(f"body is not serializable: {exc}") from exc


def decode(data: bytes | str, direction: MessageDirection | str | None = None) -> ProtocolEnvelope:
    """Parse one frame; ProtocolError on malformed frames or wrong direction."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"frame is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or set(obj) != _FRAME_KEYS:
        raise ProtocolError(f"frame must have exactly the keys {sorted(_FRAME_KEYS)}")
    try:
        msg_type = MsgType(obj["msg_type"])
    except ValueError:
        raise ProtocolError(f"unknown msg_type: {obj['msg_type']!r}") from None
    envelope = ProtocolEnvelope(
        protocol_version=obj["protocol_version"],
        widget_id=obj["widget_id"],
        seq=obj["seq"],
        msg_type=msg_type,
        body=obj["body"],
    )
    validate_envelope(envelope, direction)
    return envelope


@dataclass(frozen=True)
class ActionDispatchBody:
    """Payload of an action_dispatch message: one user gesture with context."""

    interaction_type: InteractionType
    component_id: str
    element: dict[str, Any]
    params: Any

    def __post_init__(self):
        if self.interaction_type in _NON_DISPATCHABLE:
            raise ContractError(
                f"interaction_type {self.interaction_type.value!r} cannot be dispatched"
            )

    @classmethod
    def from_body(cls, body: Any) -> "ActionDispatchBody":
        if not isinstance(body, dict):
            raise ProtocolError("action_dispatch body must be an object")
        try:
            itype = coerce_interaction_type(body["interaction_type"])
            component_id = body["component_id"]
        except (KeyError, ContractError) as exc:
            raise ProtocolError(f"malformed action_dispatch body: {exc}") from exc
        if not isinstance(component_id, str):
            raise ProtocolError("component_id must be a string")
        element = body.get("element") or {"path": "", "datum": None}
        if not isinstance(element, dict):
            raise ProtocolError("element must be an object")
        try:
            return cls(
                interaction_type=itype,
                component_id=component_id,
                element=element,
                params=body.get("params", {}),
            )
        except ContractError as exc:
            raise ProtocolError(str(exc)) from exc

    def to_body(self) -> dict[str, Any]:
        return {
            "interaction_type": self.interaction_type.value,
            "component_id": self.component_id,
            "element": self.element,
            "params": self.params,
        }


@dataclass
class CommState:
    """Per-widget sequencing state: one inbound watermark, one outbound counter."""

    last_inbound_seq: int = -1
    next_outbound_seq: int = 0


def _emit(widget: "Widget", msg_type: MsgType, body: Any) -> ProtocolEnvelope:
    comm = widget.comm
    envelope = make_envelope(widget.widget_id, comm.next_outbound_seq, msg_type, body)
    comm.next_outbound_seq += 1
    return envelope


def _state_update(widget: "Widget") -> ProtocolEnvelope:
    state = widget.store.current_state()
    return _emit(widget, MsgType.STATE_UPDATE, {"state_id": state.state_id, "payload": state.payload})


def _history_update(widget: "Widget") -> ProtocolEnvelope:
    return _emit(widget, MsgType.HISTORY_UPDATE, {"rows": widget.history_view_model()})


def handle_inbound(widget: "Widget", envelope: ProtocolEnvelope) -> list[ProtocolEnvelope]:
    """Process one frontend message; returns the outbound envelopes it causes.

    Every failure is reported as an error envelope and never mutates widget
    state. Handled messages emit ``state_update`` + ``history_update`` (for
    dispatch and restore) or ``render_spec`` + ``state_update`` (for ready).
    """
    def error(code: str, message: str) -> list[ProtocolEnvelope]:
        return [_emit(widget, MsgType.ERROR, {"code": code, "message": message, "in_reply_to_seq": envelope.seq})]

    if envelope.widget_id != widget.widget_id:
        return error("unknown_widget", f"no widget with id {envelope.widget_id!r}")
    if envelope.msg_type not in FRONTEND_TO_KERNEL_TYPES:
        return error("bad_direction", f"msg_type {envelope.msg_type.value!r} is not a frontend message")
    comm = widget.comm
    if envelope.seq <= comm.last_inbound_seq:
        return error("seq_order", f"seq {envelope.seq} is not greater than {comm.last_inbound_seq}")
    comm.last_inbound_seq = envelope.seq

    if envelope.msg_type is MsgType.READY:
        return [_emit(widget, MsgType.RENDER_SPEC, widget.render_spec()), _state_update(widget)]

    if envelope.msg_type is MsgType.ACTION_DISPATCH:
        try:
            dispatch = ActionDispatchBody.from_body(envelope.body)
        except ProtocolError as exc:
            return error("bad_body", str(exc))
        if not widget.has_component(dispatch.component_id):
            return error("bad_body", f"unknown component: {dispatch.component_id!r}")
        try:
            widget.handle_action(dispatch)
        except UdfError as exc:
            return error("udf_error", str(exc))
        except NotFoundError as exc:
            return error("not_found", str(exc))
        except ContractError as exc:
            return error("dispatch_failed", str(exc))
        except PayloadError as exc:
            return error("payload_error", str(exc))
        except Exception as exc:  # a buggy handler must not abort the session
            return error("internal_error", f"{type(exc).__name__}: {exc}")
        return [_state_update(widget), _history_update(widget)]

    # restore_request
    body = envelope.body
    if not isinstance(body, dict) or not isinstance(body.get("state_id"), int) or isinstance(body.get("state_id"), bool):
        return error("bad_body", "restore_request body must be {'state_id': <int>}")
    try:
        widget.restore(body["state_id"])
    except NotFoundError as exc:
        return error("not_found", str(exc))
    return [_state_update(widget), _history_update(widget)]


def headless_session(widget: "Widget", script: Iterable[ProtocolEnvelope]) -> list[ProtocolEnvelope]:
    """Play the frontend role: feed ``script`` FIFO through ``handle_inbound``.

    Returns the full ordered transcript (inbound and outbound interleaved).
    Per-message errors become error envelopes in the transcript; the script is
    never aborted mid-way.
    """
    transcript: list[ProtocolEnvelope] = []
    for message in script:
        transcript.append(message)
        transcript.extend(handle_inbound(widget, message))
    return transcript


def transcript_to_ndjson(transcript: Iterable[ProtocolEnvelope]) -> str:
    """One wire frame per line; round-trips through ``decode``."""
    return "\n".join(encode(env).decode("utf-8") for env in transcript) + "\n"


def transcript_to_log_lines(transcript: Iterable[ProtocolEnvelope]) -> list[dict[str, Any]]:
    """Project a transcript onto action-log-compatible dispatch lines.

    The result replays through the replay tool: action_dispatch frames keep
    their context verbatim, restore_request frames become restore records.
    """
    lines: list[dict[str, Any]] = []
    for env in transcript:
        if env.msg_type is MsgType.ACTION_DISPATCH:
            body = env.body if isinstance(env.body, dict) else {}
            lines.append(
                {
                    "interaction_type": body.get("interaction_type"),
                    "component_id": body.get("component_id"),
                    "element": body.get("element") or {"path": "", "datum": None},
                    "params": body.get("params", {}),
                }
            )
        elif env.msg_type is MsgType.RESTORE_REQUEST:
            body = env.body if isinstance(env.body, dict) else {}
            lines.append(
                {
                    "interaction_type": InteractionType.RESTORE.value,
                    "component_id": "widget",
                    "element": {"path": "", "datum": None},
                    "params": {"restored_from": body.get("state_id")},
                }
            )
    return lines


class HeadlessFrontend:
    """Builds well-formed frontend-direction envelopes with sequential seq numbers."""

    def __init__(self, widget_id: str):
        self.widget_id = widget_id
        self._seq = itertools.count()

    def _env(self, msg_type: MsgType, body: Any) -> ProtocolEnvelope:
        return make_envelope(self.widget_id, next(self._seq), msg_type, body)

    def ready(self) -> ProtocolEnvelope:
        return self._env(MsgType.READY, {})

    def dispatch(
        self,
        interaction_type: InteractionType | str,
        component_id: str,
        element: Optional[dict[str, Any]] = None,
        params: Any = None,
    ) -> ProtocolEnvelope:
        body = {
            "interaction_type": InteractionType(interaction_type).value,
            "component_id": component_id,
            "element": element or {"path": "", "datum": None},
            "params": params if params is not None else {},
        }
        return self._env(MsgType.ACTION_DISPATCH, body)

    def restore_request(self, state_id: int) -> ProtocolEnvelope:
        return self._env(MsgType.RESTORE_REQUEST, {"state_id": state_id})

    def raw(self, msg_type: MsgType | str, body: Any) -> ProtocolEnvelope:
        """Escape hatch for tests that need malformed or wrong-direction frames."""
        return self._env(MsgType(msg_type), body)
