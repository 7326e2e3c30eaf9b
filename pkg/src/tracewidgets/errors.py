"""Exception types shared across the package."""


class WidgetError(Exception):
    """Base class for all errors raised by this package."""


class ContractError(WidgetError):
    """An operation was called in a way that violates its contract
    (bad enum value, duplicate registration, inverted range, unbound handler)."""


class NotFoundError(WidgetError):
    """A referenced entity (state id, action name, node type, candidate) does not exist."""


class PayloadError(WidgetError):
    """A state payload cannot be serialized to the export format."""


class ProtocolError(WidgetError):
    """A message violates the wire protocol (unknown type, wrong direction, bad frame)."""


class UdfError(WidgetError):
    """A user-supplied override function raised; carries the user's message."""


class FormatError(WidgetError):
    """An input file does not conform to its documented schema."""


class BackendError(WidgetError):
    """The data backend failed while computing widget data."""
