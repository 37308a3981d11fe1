"""Shared exception types."""


class ConsistencyError(Exception):
    """An exact identity that must hold failed; signals an implementation bug."""


class UnsupportedSymbolError(ValueError):
    """A symbolic constant with no numeric evaluation rule."""


class GraphParseError(ValueError):
    """Invalid ribbon-graph text; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
