"""Registry of named data operations that end users can override from the notebook.

A widget developer registers each operation's default implementation; a user
may later install an override. The override receives ``(params, default_op)``
so it can wrap the default (sort its output, filter it) or replace it outright.
Installing and clearing overrides is recorded in the widget's action history by
the widget layer; this module owns only the registry itself.
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass
from typing import Any, Callable, Optional

from .errors import ContractError, NotFoundError, UdfError

DefaultOp = Callable[[Any], Any]
OverrideOp = Callable[[Any, DefaultOp], Any]


@dataclass
class SharedActionEntry:
    """One named data operation: its default and, optionally, a user override."""

    name: str
    default_op: DefaultOp
    override_op: Optional[OverrideOp] = None
    override_source: Optional[str] = None


def capture_source(fn: Callable[..., Any]) -> str:
    """Best-effort source text of a user function, for provenance.

    Falls back to the function's name when the source is unavailable
    (builtins, REPL-defined callables, C extensions).
    """
    try:
        return inspect.getsource(fn)
    except (OSError, TypeError):
        return getattr(fn, "__name__", repr(fn))


class SharedActionRegistry:
    """Per-widget mapping of action name -> SharedActionEntry."""

    def __init__(self) -> None:
        self._entries: dict[str, SharedActionEntry] = {}

    def register_default(self, name: str, default_op: DefaultOp) -> None:
        """Register a new shared action. Names are unique within a widget."""
        if name in self._entries:
            raise ContractError(f"shared action already registered: {name!r}")
        self._entries[name] = SharedActionEntry(name=name, default_op=default_op)

    def entry(self, name: str) -> SharedActionEntry:
        if name not in self._entries:
            raise NotFoundError(f"unknown shared action: {name!r}")
        return self._entries[name]

    def names(self) -> list[str]:
        return list(self._entries)

    def is_registered(self, name: str) -> bool:
        return name in self._entries

    def has_override(self, name: str) -> bool:
        return self.entry(name).override_op is not None

    def set_override(self, name: str, fn: OverrideOp, source_text: str | None = None) -> str:
        """Install an override on a registered action; returns the captured source text."""
        entry = self.entry(name)
        source = source_text if source_text is not None else capture_source(fn)
        entry.override_op = fn
        entry.override_source = source
        return source

    def clear_override(self, name: str) -> None:
        """Remove any override; invoking the action falls back to the default."""
        entry = self.entry(name)
        entry.override_op = None
        entry.override_source = None

    def invoke(self, name: str, params: Any) -> Any:
        """Run the action: ``override(params, default)`` when an override is
        installed, ``default(params)`` otherwise.

        Any exception escaping the user override is wrapped in UdfError carrying
        the user's message; the default path is never wrapped.
        """
        entry = self.entry(name)
        if entry.override_op is None:
            return entry.default_op(params)
        try:
            return entry.override_op(params, entry.default_op)
        except UdfError:
            raise
        except Exception as exc:
            raise UdfError(f"override of {name!r} failed: {exc}") from exc
