#!/usr/bin/env python3
"""Record a kernel-side Explorer session as wire frames for the frontend tests.

Drives the installed tracewidgets package headless over the fixture graph and
writes the full transcript (both directions, wire-format JSON objects) to
frontend/test/fixtures/explorer_session.json. Run from anywhere:

    python3 frontend/scripts/generate_fixture.py
"""

from __future__ import annotations

import json
from pathlib import Path

from tracewidgets import (
    Edge,
    HeadlessFrontend,
    Node,
    PropertyGraph,
    headless_session,
    make_explorer,
)

FIXTURE_PATH = Path(__file__).resolve().parent.parent / "test" / "fixtures" / "explorer_session.json"


def build_graph() -> PropertyGraph:
    return PropertyGraph(
        [
            Node("n1", "Occupation", "Chef"),
            Node("n2", "Occupation", "Baker"),
            Node("n3", "Skill", "cooking"),
            Node("n4", "Skill", "baking"),
        ],
        [
            Edge("n1", "n3", "requires"),
            Edge("n2", "n4", "requires"),
            Edge("n2", "n3", "requires"),
        ],
    )


def main() -> None:
    widget = make_explorer(build_graph())
    frontend = HeadlessFrontend(widget.widget_id)
    script = [
        frontend.ready(),
        frontend.dispatch(
            "select",
            "schema-graph",
            {"path": "schema-graph", "datum": {"node_type": "Skill"}},
            {},
        ),
        frontend.restore_request(0),
    ]
    transcript = headless_session(widget, script)
    frames = [env.to_frame_obj() for env in transcript]
    FIXTURE_PATH.parent.mkdir(parents=True, exist_ok=True)
    FIXTURE_PATH.write_text(json.dumps(frames, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(frames)} frames to {FIXTURE_PATH}")


if __name__ == "__main__":
    main()
