"""Shared fixtures: the G0 fixture graph and file-based variants of it."""

from __future__ import annotations

import json

import pytest

from tracewidgets import AlignmentCandidate, Edge, Node, PropertyGraph

G0_DOC = {
    "nodes": [
        {"id": "n1", "type": "Occupation", "title": "Chef"},
        {"id": "n2", "type": "Occupation", "title": "Baker"},
        {"id": "n3", "type": "Skill", "title": "cooking"},
        {"id": "n4", "type": "Skill", "title": "baking"},
    ],
    "edges": [
        {"src": "n1", "dst": "n3", "type": "requires"},
        {"src": "n2", "dst": "n4", "type": "requires"},
        {"src": "n2", "dst": "n3", "type": "requires"},
    ],
}


def build_g0() -> PropertyGraph:
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


@pytest.fixture
def g0() -> PropertyGraph:
    return build_g0()


@pytest.fixture
def g0_path(tmp_path):
    path = tmp_path / "g0.json"
    path.write_text(json.dumps(G0_DOC))
    return path


CANDIDATES = [
    AlignmentCandidate("c1", "cooking skills", ("can cook meals", "prepares food"), "n3"),
    AlignmentCandidate("c2", "chef role", ("runs a kitchen",), "n1"),
    AlignmentCandidate("c3", "baking skills", ("bakes bread",), "n4"),
]


@pytest.fixture
def candidates() -> list[AlignmentCandidate]:
    return list(CANDIDATES)


@pytest.fixture
def candidates_path(tmp_path):
    path = tmp_path / "candidates.json"
    path.write_text(
        json.dumps(
            [
                {
                    "candidate_id": c.candidate_id,
                    "corpus_term": c.corpus_term,
                    "corpus_descriptions": list(c.corpus_descriptions),
                    "graph_entity_id": c.graph_entity_id,
                }
                for c in CANDIDATES
            ]
        )
    )
    return path
