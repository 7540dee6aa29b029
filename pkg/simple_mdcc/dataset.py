"""Point ingestion, synthetic generation and result files."""

from __future__ import annotations

import codecs
import csv
import io
import math
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel, Field

from .exceptions import EmptyFile, NonFiniteFeature, ParseError
from .models import Assignment, DispersionResult, PointSet
from .utils.log import logger
from .utils.numfmt import format_dispersion

PathLike = Union[str, Path]

ASSIGNMENT_HEADER = ("item_index", "group")


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def ingest_csv(path: PathLike) -> PointSet:
    """Read one item per row, m comma-separated numbers per item.

    A first row in which no field parses as a number is treated as a header.
    Row and column numbers in errors are 1-based file positions.
    """
    path = Path(path)
    raw = path.read_bytes()
    if raw.startswith(codecs.BOM_UTF8):
        raw = raw[len(codecs.BOM_UTF8) :]
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        row_no = raw[: exc.start].count(b"\n") + 1
        raise ParseError(f"invalid UTF-8 byte 0x{raw[exc.start]:02x}", row=row_no) from None
    rows = [
        (row_no, row)
        for row_no, row in enumerate(csv.reader(io.StringIO(text, newline="")), start=1)
        if any(cell.strip() for cell in row)
    ]
    if not rows:
        raise EmptyFile(f"{path} contains no rows")

    if not any(_is_number(cell.strip()) for cell in rows[0][1]):
        logger.debug(f"simple-mdcc: 跳过表头 {rows[0][1]!r}")
        rows = rows[1:]
        if not rows:
            raise EmptyFile(f"{path} contains a header but no data rows")

    width = len(rows[0][1])
    values: List[List[float]] = []
    for row_no, row in rows:
        if len(row) != width:
            raise ParseError(f"expected {width} columns, got {len(row)}", row=row_no)
        parsed: List[float] = []
        for col_no, cell in enumerate(row, start=1):
            try:
                value = float(cell.strip())
            except ValueError:
                raise ParseError(f"{cell!r} is not a number", row=row_no, column=col_no) from None
            if not math.isfinite(value):
                raise NonFiniteFeature(f"row {row_no} col {col_no}: {cell!r} is not finite")
            parsed.append(value)
        values.append(parsed)
    logger.info(f"simple-mdcc: 已读取 {path} (n={len(values)}, m={width})")
    return PointSet(np.asarray(values, dtype=np.float64))


def generate_normal(n: int, m: int, seed: int) -> PointSet:
    """n × m standard-normal samples.

    Bits come from NumPy's PCG64 generator seeded through SeedSequence and the
    ziggurat sampler behind ``Generator.standard_normal``; the same
    ``(seed, n, m)`` gives the same matrix on every platform for a given NumPy
    release.
    """
    if n < 1 or m < 1:
        raise ValueError(f"n and m must be >= 1, got n={n}, m={m}")
    if seed < 0 or seed >= 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return PointSet(rng.standard_normal((n, m)))


def write_assignment_csv(path: PathLike, assignment: Assignment) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(ASSIGNMENT_HEADER)
        writer.writerows(enumerate(assignment.groups))


def load_assignment_csv(path: PathLike) -> Assignment:
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise EmptyFile(f"{path} is empty")
        if tuple(cell.strip() for cell in header) != ASSIGNMENT_HEADER:
            raise ParseError(f"unexpected header {header!r}", row=1)
        groups: List[int] = []
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                index, group = int(row[0]), int(row[1])
            except (IndexError, ValueError):
                raise ParseError(f"malformed row {row!r}", row=row_no) from None
            if index != len(groups):
                raise ParseError(f"item_index {index} out of order", row=row_no, column=1)
            groups.append(group)
    return Assignment(tuple(groups))


class RunSummary(BaseModel):
    """Result summary written next to the assignment CSV."""

    dispersion: str = Field(description='17 位有效数字，或 "inf"')
    iterations_used: int
    fallback_triggered: bool
    variant: str
    wall_clock_ms: float
    peak_mem_bytes: Optional[int] = Field(
        default=None, description="无法获取时为 null"
    )
    n: int
    m: int
    c1: int
    c2: int

    @classmethod
    def from_result(
        cls,
        result: DispersionResult,
        *,
        points: PointSet,
        c1: int,
        c2: int,
        wall_clock_ms: float,
        peak_mem_bytes: Optional[int],
    ) -> "RunSummary":
        return cls(
            dispersion=format_dispersion(result.dispersion),
            iterations_used=result.iterations_used,
            fallback_triggered=result.fallback_triggered,
            variant=result.variant.value,
            wall_clock_ms=wall_clock_ms,
            peak_mem_bytes=peak_mem_bytes,
            n=points.n,
            m=points.m,
            c1=c1,
            c2=c2,
        )

    def write(self, path: PathLike) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.model_dump_json(indent=2) + "\n", encoding="utf-8")
