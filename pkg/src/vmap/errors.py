"""Exception types shared across the layout pipeline."""


class VMapError(Exception):
    """Base class for all library errors."""


class GraphValidationError(VMapError):
    """Raised when an input graph document violates a structural invariant.

    The message always names the offending vertex or edge.
    """


class DisconnectedError(VMapError):
    """Raised when a path query spans two graph components."""

    def __init__(self, source: str, target: str):
        super().__init__(f"no path between {source!r} and {target!r}: disconnected")
        self.source = source
        self.target = target


class BorderTooWideError(VMapError):
    """Raised when a border width is infeasible for the given partition."""


class UnknownDatasetError(VMapError):
    """Raised for a builtin dataset name that does not exist."""
