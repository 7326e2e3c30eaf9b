"""Command-line tool: validate graph files, print schemas, replay action logs.

Exit codes: 0 success, 1 invalid input data (with diagnostics on stderr),
2 I/O failure.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import click

from .demos import load_candidates, make_alignment_widget, make_explorer
from .errors import ContractError, FormatError, WidgetError
from .graph import compute_schema, load_graph
from .protocol import ActionDispatchBody
from .state import InteractionType
from .widget import Widget


@dataclass
class ReplayReport:
    """Outcome of one replay run; every input line is either applied or an error."""

    actions_applied: int = 0
    errors: list[dict[str, Any]] = field(default_factory=list)
    final_state_id: int = -1
    final_export_path: str = ""

    def to_obj(self) -> dict[str, Any]:
        return {
            "actions_applied": self.actions_applied,
            "errors": self.errors,
            "final_state_id": self.final_state_id,
            "final_export_path": self.final_export_path,
        }


def cmd_validate(graph_path: str | Path) -> int:
    """Exit 0 when the graph file loads cleanly, 1 with diagnostics, 2 on I/O failure."""
    try:
        load_graph(graph_path)
    except FormatError as exc:
        click.echo(f"invalid graph file: {exc}", err=True)
        return 1
    except OSError as exc:
        click.echo(f"cannot read graph file: {exc}", err=True)
        return 2
    return 0


def cmd_schema(graph_path: str | Path) -> int:
    """Print the graph schema as JSON with sorted keys."""
    try:
        graph = load_graph(graph_path)
    except FormatError as exc:
        click.echo(f"invalid graph file: {exc}", err=True)
        return 1
    except OSError as exc:
        click.echo(f"cannot read graph file: {exc}", err=True)
        return 2
    click.echo(json.dumps(compute_schema(graph).to_payload(), sort_keys=True, indent=2))
    return 0


def _apply_log_line(widget: Widget, obj: Any) -> Optional[str]:
    """Apply one parsed log line; returns an error code or None when applied."""
    if not isinstance(obj, dict) or "interaction_type" not in obj:
        return "bad_record"
    itype = obj["interaction_type"]
    if itype == InteractionType.INIT.value:
        return None  # the fresh widget recorded its own init
    if itype == InteractionType.RESTORE.value:
        params = obj.get("params") or {}
        target = params.get("restored_from")
        try:
            widget.restore(target)
            return None
        except WidgetError:
            return "restore_failed"
    if itype == InteractionType.OVERRIDE.value:
        # Source text is provenance, not something we re-execute.
        return "override_not_replayable"
    if itype == InteractionType.CLEAR_OVERRIDE.value:
        params = obj.get("params") or {}
        try:
            widget.clear_override(params.get("name"))
            return None
        except WidgetError:
            return "clear_override_failed"
    try:
        dispatch = ActionDispatchBody.from_body(
            {
                "interaction_type": itype,
                "component_id": obj.get("component_id"),
                "element": obj.get("element"),
                "params": obj.get("params", {}),
            }
        )
        widget.handle_action(dispatch)
        return None
    except WidgetError:
        return "dispatch_failed"


def cmd_replay(
    graph_path: str | Path,
    log_path: str | Path,
    out_path: str | Path,
    widget_type: str,
    candidates_path: str | Path | None = None,
    journal_path: str | Path | None = None,
) -> ReplayReport:
    """Rebuild a widget and apply a recorded action log FIFO.

    Failing lines go into the report and the replay continues. The export of
    the final state is written to ``out_path``; identical inputs produce
    byte-identical exports apart from the exported_at stamp.
    """
    graph = load_graph(graph_path)
    if widget_type == "explorer":
        widget = make_explorer(graph, log_path=journal_path)
    elif widget_type == "alignment":
        if candidates_path is None:
            raise ContractError("--candidates is required for the alignment widget")
        widget = make_alignment_widget(graph, load_candidates(candidates_path), log_path=journal_path)
    else:
        raise ContractError(f"unknown widget type: {widget_type!r}")

    report = ReplayReport()
    text = Path(log_path).read_text(encoding="utf-8")
    line_no = 0
    for line in text.splitlines():
        if not line.strip():
            continue
        line_no += 1
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            report.errors.append({"line_no": line_no, "code": "bad_json"})
            continue
        code = _apply_log_line(widget, obj)
        if code is None:
            report.actions_applied += 1
        else:
            report.errors.append({"line_no": line_no, "code": code})

    report.final_state_id = widget.current_state_id
    export = widget.export_data()
    Path(out_path).write_text(json.dumps(export, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    report.final_export_path = str(out_path)
    return report


@click.group()
def main() -> None:
    """Inspect graph files and replay recorded widget sessions."""


@main.command("validate")
@click.option("--graph", "graph_path", required=True, help="Graph file to check.")
def validate_command(graph_path: str) -> None:
    """Validate a graph file against the expected JSON schema."""
    sys.exit(cmd_validate(graph_path))


@main.command("schema")
@click.option("--graph", "graph_path", required=True, help="Graph file to summarize.")
def schema_command(graph_path: str) -> None:
    """Print the type-level schema of a graph file."""
    sys.exit(cmd_schema(graph_path))


@main.command("replay")
@click.option("--graph", "graph_path", required=True, help="Graph file backing the widget.")
@click.option("--log", "log_path", required=True, help="Newline-delimited action log to replay.")
@click.option("--out", "out_path", required=True, help="Where to write the final-state export.")
@click.option("--widget", "widget_type", required=True, type=click.Choice(["explorer", "alignment"]))
@click.option("--candidates", "candidates_path", default=None, help="Candidates file (alignment only).")
def replay_command(
    graph_path: str,
    log_path: str,
    out_path: str,
    widget_type: str,
    candidates_path: str | None,
) -> None:
    """Replay an action log against a freshly built widget."""
    try:
        report = cmd_replay(graph_path, log_path, out_path, widget_type, candidates_path)
    except (FormatError, ContractError) as exc:
        click.echo(f"replay setup failed: {exc}", err=True)
        sys.exit(1)
    except OSError as exc:
        click.echo(f"cannot read input: {exc}", err=True)
        sys.exit(2)
    click.echo(json.dumps(report.to_obj(), indent=2))
    sys.exit(0)


if __name__ == "__main__":
    main()
