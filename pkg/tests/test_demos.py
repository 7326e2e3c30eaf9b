"""Demo widgets: Explorer coordination and the alignment verification workflow."""

from __future__ import annotations

import pytest

from tracewidgets import (
    ActionDispatchBody,
    AlignmentCandidate,
    ContractError,
    Decision,
    FormatError,
    InteractionType,
    NotFoundError,
    load_candidates,
    make_alignment_widget,
    make_explorer,
    set_decision,
)


def dispatch(itype, component, datum=None, params=None) -> ActionDispatchBody:
    return ActionDispatchBody(
        InteractionType(itype),
        component,
        {"path": component, "datum": datum},
        params or {},
    )


class TestExplorer:
    def test_state_zero_schema(self, g0):
        widget = make_explorer(g0)
        assert widget.current_payload()["schema"]["type_nodes"] == {"Occupation": 2, "Skill": 2}

    def test_select_updates_both_charts_in_one_state(self, g0):
        widget = make_explorer(g0)
        history_before = len(widget.history())
        state = widget.handle_action(dispatch("select", "schema-graph", {"node_type": "Skill"}))
        assert len(widget.history()) == history_before + 1
        assert state.payload["node_distribution"] == [["cooking", 2], ["baking", 1]]
        assert state.payload["relation_distribution"] == {"requires(incoming)": 3}

    def test_deselect_returns_to_whole_graph_view(self, g0):
        widget = make_explorer(g0)
        initial = widget.current_payload()["node_distribution"]
        widget.handle_action(dispatch("select", "schema-graph", {"node_type": "Skill"}))
        state = widget.handle_action(dispatch("deselect", "schema-graph"))
        assert state.payload["node_distribution"] == initial
        assert state.payload["selection"] == {"node_type": None}

    def test_bar_plus_relation_choice_filters_to_neighbors(self, g0):
        widget = make_explorer(g0)
        widget.handle_action(dispatch("select", "schema-graph", {"node_type": "Skill"}))
        state = widget.handle_action(
            dispatch(
                "select",
                "node-dist",
                {"label": "cooking"},
                {"rel_type": "requires", "direction": "in"},
            )
        )
        assert state.payload["filtered_nodes"] == ["n1", "n2"]

    def test_bar_filter_accepts_node_id_datum(self, g0):
        widget = make_explorer(g0)
        state = widget.handle_action(
            dispatch("select", "node-dist", {"node_id": "n3"}, {"rel_type": "requires", "direction": "in"})
        )
        assert state.payload["filtered_nodes"] == ["n1", "n2"]

    def test_unknown_bar_label(self, g0):
        widget = make_explorer(g0)
        with pytest.raises(NotFoundError):
            widget.handle_action(dispatch("select", "node-dist", {"label": "sailing"}, {"rel_type": "requires"}))

    def test_select_unknown_node_type_changes_nothing(self, g0):
        widget = make_explorer(g0)
        before = len(widget.history())
        with pytest.raises(NotFoundError):
            widget.handle_action(dispatch("select", "schema-graph", {"node_type": "Tool"}))
        assert len(widget.history()) == before


class TestAlignmentWidget:
    def test_initial_payload_has_all_candidates_undecided(self, g0, candidates):
        widget = make_alignment_widget(g0, candidates)
        table = widget.current_payload()["candidates"]
        assert set(table) == {"c1", "c2", "c3"}
        assert all(row["decision"] == "undecided" for row in table.values())

    def test_select_candidate_updates_context_and_subgraph(self, g0, candidates):
        widget = make_alignment_widget(g0, candidates)
        state = widget.handle_action(dispatch("select", "candidates", {"candidate_id": "c1"}))
        assert state.payload["context"] == ["can cook meals", "prepares food"]
        assert {n["id"] for n in state.payload["subgraph"]["nodes"]} == {"n1", "n2", "n3"}

    def test_context_shows_descriptions_verbatim(self, g0, candidates):
        widget = make_alignment_widget(g0, candidates)
        state = widget.handle_action(dispatch("select", "candidates", {"candidate_id": "c2"}))
        assert state.payload["context"] == ["runs a kitchen"]

    def test_invalid_entity_id_fails_at_construction(self, g0):
        bad = [AlignmentCandidate("cx", "term", ("d",), "n99")]
        with pytest.raises(FormatError):
            make_alignment_widget(g0, bad)

    def test_duplicate_candidate_id_fails_at_construction(self, g0):
        dupes = [
            AlignmentCandidate("c1", "a", ("d",), "n1"),
            AlignmentCandidate("c1", "b", ("d",), "n2"),
        ]
        with pytest.raises(FormatError):
            make_alignment_widget(g0, dupes)

    def test_parent_only_override_reduces_the_subgraph(self, g0, candidates):
        widget = make_alignment_widget(g0, candidates)

        def parent_only(params, default):
            full = default(params)
            root = params["node_id"]
            parent_edges = [e for e in full["edges"] if e["dst"] == root]
            keep = {root} | {e["src"] for e in parent_edges}
            return {
                "nodes": [n for n in full["nodes"] if n["id"] in keep],
                "edges": parent_edges,
            }

        widget.handle_action(dispatch("select", "candidates", {"candidate_id": "c2"}))
        default_nodes = {n["id"] for n in widget.current_payload()["subgraph"]["nodes"]}
        assert default_nodes == {"n1", "n3"}

        widget.set_override("get_subgraph", parent_only)
        reduced = widget.current_payload()["subgraph"]
        reduced_nodes = {n["id"] for n in reduced["nodes"]}
        assert reduced_nodes == {"n1"}  # Chef has no parents
        assert reduced_nodes <= default_nodes

        # the skill candidate keeps its two parents
        widget.handle_action(dispatch("select", "candidates", {"candidate_id": "c1"}))
        filtered = {n["id"] for n in widget.current_payload()["subgraph"]["nodes"]}
        assert filtered == {"n1", "n2", "n3"}

    def test_filter_override_stays_inside_the_default_subgraph(self, g0, candidates):
        widget = make_alignment_widget(g0, candidates)
        defaults = {}
        for cid in ("c1", "c2", "c3"):
            widget.handle_action(dispatch("select", "candidates", {"candidate_id": cid}))
            defaults[cid] = {n["id"] for n in widget.current_payload()["subgraph"]["nodes"]}

        def parent_only(params, default):
            full = default(params)
            root = params["node_id"]
            parent_edges = [e for e in full["edges"] if e["dst"] == root]
            keep = {root} | {e["src"] for e in parent_edges}
            return {
                "nodes": [n for n in full["nodes"] if n["id"] in keep],
                "edges": parent_edges,
            }

        widget.set_override("get_subgraph", parent_only)
        for cid in ("c1", "c2", "c3"):
            widget.handle_action(dispatch("select", "candidates", {"candidate_id": cid}))
            filtered = {n["id"] for n in widget.current_payload()["subgraph"]["nodes"]}
            assert filtered <= defaults[cid]


class TestSetDecision:
    def test_set_decision_updates_the_candidate(self, g0, candidates):
        widget = make_alignment_widget(g0, candidates)
        state = set_decision(widget, "c1", Decision.INSERT)
        assert state.payload["candidates"]["c1"]["decision"] == "insert"
        assert widget.history()[-1].interaction_type is InteractionType.SET_DECISION

    def test_restore_to_pre_decision_state(self, g0, candidates):
        widget = make_alignment_widget(g0, candidates)
        set_decision(widget, "c1", "insert")
        restored = widget.restore(0)
        assert restored.payload["candidates"]["c1"]["decision"] == "undecided"

    def test_invalid_decision_value(self, g0, candidates):
        widget = make_alignment_widget(g0, candidates)
        with pytest.raises(ContractError):
            set_decision(widget, "c1", "maybe")

    def test_unknown_candidate(self, g0, candidates):
        widget = make_alignment_widget(g0, candidates)
        with pytest.raises(NotFoundError):
            set_decision(widget, "c9", "insert")

    def test_decisions_stay_total_in_every_export(self, g0, candidates):
        widget = make_alignment_widget(g0, candidates)
        set_decision(widget, "c1", "insert")
        set_decision(widget, "c2", "defer")
        widget.restore(1)
        for state_id in range(widget.current_state_id + 1):
            table = widget.export_data(state_id)["payload"]["candidates"]
            assert set(table) == {"c1", "c2", "c3"}
            for row in table.values():
                assert row["decision"] in {"undecided", "insert", "ignore", "defer"}


class TestLoadCandidates:
    def test_round_trip(self, candidates_path):
        loaded = load_candidates(candidates_path)
        assert [c.candidate_id for c in loaded] == ["c1", "c2", "c3"]
        assert loaded[0].corpus_descriptions == ("can cook meals", "prepares food")
        assert all(c.decision is Decision.UNDECIDED for c in loaded)

    def test_malformed_entry(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('[{"candidate_id": "c1"}]')
        with pytest.raises(FormatError):
            load_candidates(path)

    def test_not_a_list(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"candidate_id": "c1"}')
        with pytest.raises(FormatError):
            load_candidates(path)
