"""Notebook widgets with an append-only interaction history.

Every interaction on a widget is recorded as an action plus a full state
snapshot; any past state can be restored (as a new history entry) or exported
as plain JSON. The data operations behind the components are shared actions
that end users can override from the notebook. Two demo widgets over a
file-loaded property graph show the pieces working together.
"""

from .actions import SharedActionEntry, SharedActionRegistry
from .demos import (
    AlignmentCandidate,
    Decision,
    load_candidates,
    make_alignment_widget,
    make_explorer,
    set_decision,
)
from .errors import (
    BackendError,
    ContractError,
    FormatError,
    NotFoundError,
    PayloadError,
    ProtocolError,
    UdfError,
    WidgetError,
)
from .graph import (
    Direction,
    Distribution,
    Edge,
    Node,
    PropertyGraph,
    SchemaGraph,
    SortOrder,
    compute_schema,
    filter_by_relation,
    load_graph,
    neighbor_ids,
    node_distribution,
    relation_distribution,
    subgraph,
)
from .protocol import (
    ActionDispatchBody,
    HeadlessFrontend,
    MessageDirection,
    MsgType,
    ProtocolEnvelope,
    decode,
    encode,
    handle_inbound,
    headless_session,
    make_envelope,
    transcript_to_log_lines,
    transcript_to_ndjson,
)
from .state import (
    ActionContext,
    ActionRecord,
    DataState,
    InteractionType,
    StateStore,
)
from .widget import ComponentKind, ComponentSpec, Widget, WidgetSpec, init

__version__ = "0.1.0"

__all__ = [
    "ActionContext",
    "ActionDispatchBody",
    "ActionRecord",
    "AlignmentCandidate",
    "BackendError",
    "ComponentKind",
    "ComponentSpec",
    "ContractError",
    "DataState",
    "Decision",
    "Direction",
    "Distribution",
    "Edge",
    "FormatError",
    "HeadlessFrontend",
    "InteractionType",
    "MessageDirection",
    "MsgType",
    "Node",
    "NotFoundError",
    "PayloadError",
    "PropertyGraph",
    "ProtocolEnvelope",
    "ProtocolError",
    "SchemaGraph",
    "SharedActionEntry",
    "SharedActionRegistry",
    "SortOrder",
    "StateStore",
    "UdfError",
    "Widget",
    "WidgetError",
    "WidgetSpec",
    "compute_schema",
    "decode",
    "encode",
    "filter_by_relation",
    "handle_inbound",
    "headless_session",
    "init",
    "load_candidates",
    "load_graph",
    "make_alignment_widget",
    "make_envelope",
    "make_explorer",
    "neighbor_ids",
    "node_distribution",
    "relation_distribution",
    "set_decision",
    "subgraph",
    "transcript_to_log_lines",
    "transcript_to_ndjson",
]
