"""Replay CLI: validation, schema printing, deterministic log replay."""

from __future__ import annotations

import json

from click.testing import CliRunner

from tracewidgets import HeadlessFrontend, headless_session, make_explorer, transcript_to_log_lines
from tracewidgets.cli import cmd_replay, cmd_schema, cmd_validate, main


def write_log(path, lines) -> None:
    path.write_text("".join(json.dumps(line) + "\n" for line in lines))


SELECT_SKILL = {
    "interaction_type": "select",
    "component_id": "schema-graph",
    "element": {"path": "type/Skill", "datum": {"node_type": "Skill"}},
    "params": {},
}
RESTORE_0 = {
    "interaction_type": "restore",
    "component_id": "widget",
    "element": {"path": "", "datum": None},
    "params": {"restored_from": 0},
}


def stripped(path) -> str:
    doc = json.loads(path.read_text())
    doc.pop("exported_at")
    return json.dumps(doc, sort_keys=True)


class TestValidate:
    def test_valid_graph(self, g0_path):
        assert cmd_validate(g0_path) == 0

    def test_dangling_edge_exits_one_and_names_it(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({
            "nodes": [{"id": "n1", "type": "A", "title": "a"}],
            "edges": [{"src": "n1", "dst": "n9", "type": "r"}],
        }))
        assert cmd_validate(path) == 1
        assert "n9" in capsys.readouterr().err

    def test_missing_file_exits_two(self, tmp_path):
        assert cmd_validate(tmp_path / "nope.json") == 2

    def test_cli_entry_point(self, g0_path):
        result = CliRunner().invoke(main, ["validate", "--graph", str(g0_path)])
        assert result.exit_code == 0


class TestSchema:
    def test_g0_schema_json(self, g0_path, capsys):
        assert cmd_schema(g0_path) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["type_nodes"] == {"Occupation": 2, "Skill": 2}
        assert doc["type_edges"] == [
            {"count": 3, "dst_type": "Skill", "rel_type": "requires", "src_type": "Occupation"}
        ]

    def test_empty_graph(self, tmp_path, capsys):
        path = tmp_path / "empty.json"
        path.write_text(json.dumps({"nodes": [], "edges": []}))
        assert cmd_schema(path) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc == {"type_edges": [], "type_nodes": {}}

    def test_invalid_file_nonzero(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{")
        assert cmd_schema(path) != 0


class TestReplay:
    def test_empty_log_exports_the_init_state(self, g0, g0_path, tmp_path):
        log = tmp_path / "empty.ndjson"
        log.write_text("")
        out = tmp_path / "out.json"
        report = cmd_replay(g0_path, log, out, "explorer")
        assert report.actions_applied == 0
        assert report.errors == []
        assert report.final_state_id == 0
        doc = json.loads(out.read_text())
        assert doc["payload"] == make_explorer(g0).export_data(0)["payload"]

    def test_select_then_restore_round_trips_to_state_zero(self, g0, g0_path, tmp_path):
        log = tmp_path / "session.ndjson"
        write_log(log, [SELECT_SKILL, RESTORE_0])
        out = tmp_path / "out.json"
        report = cmd_replay(g0_path, log, out, "explorer")
        assert report.actions_applied == 2
        assert report.final_state_id == 2
        doc = json.loads(out.read_text())
        assert doc["payload"] == make_explorer(g0).export_data(0)["payload"]

    def test_one_malformed_line_among_five(self, g0_path, tmp_path):
        log = tmp_path / "session.ndjson"
        lines = [json.dumps(SELECT_SKILL) for _ in range(2)]
        lines.append("this is not json")
        lines += [json.dumps(SELECT_SKILL) for _ in range(2)]
        log.write_text("\n".join(lines) + "\n")
        report = cmd_replay(g0_path, log, tmp_path / "out.json", "explorer")
        assert report.actions_applied == 4
        assert len(report.errors) == 1
        assert report.errors[0] == {"line_no": 3, "code": "bad_json"}

    def test_applied_plus_errors_equals_line_count(self, g0_path, tmp_path):
        log = tmp_path / "session.ndjson"
        write_log(
            log,
            [
                SELECT_SKILL,
                {"interaction_type": "restore", "params": {"restored_from": 99}},
                {"interaction_type": "select", "component_id": "nowhere", "element": None, "params": {}},
                {"no_type": True},
                RESTORE_0,
            ],
        )
        report = cmd_replay(g0_path, log, tmp_path / "out.json", "explorer")
        assert report.actions_applied + len(report.errors) == 5
        codes = [e["code"] for e in report.errors]
        assert codes == ["restore_failed", "dispatch_failed", "bad_record"]

    def test_journaled_init_lines_replay_as_no_ops(self, g0, g0_path, tmp_path):
        journal = tmp_path / "journal.ndjson"
        widget = make_explorer(g0, log_path=journal)
        frontend = HeadlessFrontend(widget.widget_id)
        headless_session(
            widget,
            [
                frontend.dispatch("select", "schema-graph", {"path": "t", "datum": {"node_type": "Skill"}}),
                frontend.restore_request(0),
            ],
        )
        out = tmp_path / "out.json"
        report = cmd_replay(g0_path, journal, out, "explorer")
        assert report.errors == []
        assert report.actions_applied == 3  # init no-op + select + restore
        assert json.loads(out.read_text())["payload"] == widget.export_data()["payload"]

    def test_replay_is_deterministic_modulo_export_timestamp(self, g0_path, tmp_path):
        log = tmp_path / "session.ndjson"
        write_log(log, [SELECT_SKILL, RESTORE_0, SELECT_SKILL])
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        cmd_replay(g0_path, log, out1, "explorer")
        cmd_replay(g0_path, log, out2, "explorer")
        assert stripped(out1) == stripped(out2)

    def test_replaying_a_replay_journal_is_idempotent(self, g0_path, tmp_path):
        log = tmp_path / "session.ndjson"
        write_log(log, [SELECT_SKILL, RESTORE_0])
        out1 = tmp_path / "a.json"
        journal = tmp_path / "journal.ndjson"
        cmd_replay(g0_path, log, out1, "explorer", journal_path=journal)
        out2 = tmp_path / "b.json"
        cmd_replay(g0_path, journal, out2, "explorer")
        assert stripped(out1) == stripped(out2)

    def test_transcript_projection_replays_to_the_same_state(self, g0, g0_path, tmp_path):
        widget = make_explorer(g0)
        frontend = HeadlessFrontend(widget.widget_id)
        transcript = headless_session(
            widget,
            [
                frontend.ready(),
                frontend.dispatch("select", "schema-graph", {"path": "t", "datum": {"node_type": "Skill"}}),
                frontend.restore_request(0),
            ],
        )
        log = tmp_path / "from_transcript.ndjson"
        write_log(log, transcript_to_log_lines(transcript))
        out = tmp_path / "out.json"
        cmd_replay(g0_path, log, out, "explorer")
        assert json.loads(out.read_text())["payload"] == widget.export_data()["payload"]

    def test_alignment_replay_requires_candidates(self, g0_path, tmp_path):
        log = tmp_path / "log.ndjson"
        log.write_text("")
        result = CliRunner().invoke(
            main,
            ["replay", "--graph", str(g0_path), "--log", str(log), "--out", str(tmp_path / "o.json"), "--widget", "alignment"],
        )
        assert result.exit_code == 1

    def test_alignment_replay_applies_decisions(self, g0_path, candidates_path, tmp_path):
        log = tmp_path / "log.ndjson"
        write_log(
            log,
            [
                {
                    "interaction_type": "set_decision",
                    "component_id": "candidates",
                    "element": {"path": "candidates/c1", "datum": {"candidate_id": "c1"}},
                    "params": {"candidate_id": "c1", "decision": "insert"},
                }
            ],
        )
        out = tmp_path / "out.json"
        report = cmd_replay(g0_path, log, out, "alignment", candidates_path=candidates_path)
        assert report.errors == []
        doc = json.loads(out.read_text())
        assert doc["payload"]["candidates"]["c1"]["decision"] == "insert"

    def test_cli_replay_prints_a_report(self, g0_path, tmp_path):
        log = tmp_path / "log.ndjson"
        write_log(log, [SELECT_SKILL])
        result = CliRunner().invoke(
            main,
            ["replay", "--graph", str(g0_path), "--log", str(log), "--out", str(tmp_path / "o.json"), "--widget", "explorer"],
        )
        assert result.exit_code == 0
        report = json.loads(result.output)
        assert report["actions_applied"] == 1
        assert report["final_state_id"] == 1
