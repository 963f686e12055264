"""Exception types shared across the package."""


class DynbetError(Exception):
    """Base class for all dynbet errors."""


class EdgeListParseError(DynbetError, ValueError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class IncrementalViolation(DynbetError, ValueError):
    """An update would increase an edge weight (decremental updates unsupported)."""


class UnsupportedGraphError(DynbetError, ValueError):
    """Engine cannot handle this graph class (e.g. KDB on weighted graphs)."""


class CapacityError(DynbetError, MemoryError):
    """The n x n state would exceed the configured memory cap."""


class ConsistencyError(DynbetError, RuntimeError):
    """Internal state violated an invariant (e.g. a staged distance increase)."""
