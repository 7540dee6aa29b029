from __future__ import annotations


class MDCCError(ValueError):
    """Base class for every data / instance error raised by simple-mdcc."""


class DimensionMismatch(MDCCError):
    pass


class NonFiniteFeature(MDCCError):
    pass


class CardinalityMismatch(MDCCError):
    pass


class EmptyFile(MDCCError):
    pass


class InstanceTooLarge(MDCCError):
    """Brute-force oracle refused to enumerate an instance above its guard."""


class ParseError(MDCCError):
    """CSV 解析失败，row / column 均从 1 开始计数。"""

    def __init__(self, message: str, *, row: int, column: int | None = None) -> None:
        self.row = row
        self.column = column
        where = f"row {row}" if column is None else f"row {row} col {column}"
        super().__init__(f"{where}: {message}")


class DuplicateEdge(MDCCError, RuntimeError):
    """An edge was inserted twice into a threshold graph (sweep bug)."""

    def __init__(self, u: int, v: int) -> None:
        self.u = u
        self.v = v
        super().__init__(f"edge {{{u}, {v}}} already present in threshold graph")


class SweepInvariantViolation(RuntimeError):
    pass
