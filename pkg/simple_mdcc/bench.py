"""Benchmark harness: runtime / peak-memory grid and the fallback survey.

Every (n, variant, repetition) cell runs in a fresh spawned worker so the
peak resident memory it reports belongs to that cell alone. Repetition r
uses seed ``base_seed + r`` for every n and variant.
"""

from __future__ import annotations

import csv
import math
import multiprocessing
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import psutil

from .dataset import generate_normal
from .dispersion import solve
from .models import CardinalityConstraint, DispersionResult, PointSet, SolveMode
from .utils.log import logger, setup_logging

TIMING_HEADER = ("n", "variant", "repetition", "ms", "peak_mem_bytes")
MEMORY_UNAVAILABLE = "NA"


def current_rss_bytes() -> Optional[int]:
    try:
        return int(psutil.Process().memory_info().rss)
    except psutil.Error:
        return None


def peak_rss_bytes() -> Optional[int]:
    """Peak resident set size of this process, or ``None`` if the OS will not say."""
    try:
        peak = getattr(psutil.Process().memory_info(), "peak_wset", None)
    except psutil.Error:
        peak = None
    if peak is not None:
        return int(peak)
    try:
        import resource
    except ImportError:
        return None
    maxrss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    # Linux 以 KiB 为单位，macOS 以字节为单位
    return int(maxrss) if sys.platform == "darwin" else int(maxrss) * 1024


def measure_solve(
    points: PointSet,
    constraint: CardinalityConstraint,
    variant: Union[SolveMode, str, None] = None,
) -> Tuple[DispersionResult, float, Optional[int]]:
    """Solve once; returns the result, wall-clock ms and peak RSS growth in bytes."""
    baseline = current_rss_bytes()
    started = time.perf_counter()
    result = solve(points, constraint, variant)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    peak = peak_rss_bytes()
    if peak is None or baseline is None:
        logger.warning("simple-mdcc: 当前平台无法获取峰值内存，记为 NA")
        return result, elapsed_ms, None
    return result, elapsed_ms, max(peak - baseline, 0)


def parse_range(text: str) -> List[int]:
    """``"start:stop:step"`` with an inclusive stop, e.g. ``1000:10000:1000``."""
    try:
        start, stop, step = (int(part) for part in text.split(":"))
    except ValueError:
        raise ValueError(f"benchmark range must look like start:stop:step, got {text!r}") from None
    if start < 2 or step < 1 or stop < start:
        raise ValueError(f"invalid benchmark range {text!r}")
    return list(range(start, stop + 1, step))


@dataclass(frozen=True)
class BenchCell:
    n: int
    m: int
    variant: SolveMode
    repetition: int
    seed: int
    log_level: str = "WARNING"


@dataclass(frozen=True)
class BenchRecord:
    n: int
    variant: str
    repetition: int
    ms: float
    peak_mem_bytes: Optional[int]
    dispersion: float
    fallback_triggered: bool
    iterations_used: int


def run_cell(cell: BenchCell) -> BenchRecord:
    """Generate, solve and measure one cell in the current process."""
    setup_logging(cell.log_level)
    points = generate_normal(cell.n, cell.m, cell.seed)
    constraint = CardinalityConstraint(cell.n // 2, cell.n - cell.n // 2)
    result, elapsed_ms, memory = measure_solve(points, constraint, cell.variant)
    return BenchRecord(
        n=cell.n,
        variant=cell.variant.value,
        repetition=cell.repetition,
        ms=elapsed_ms,
        peak_mem_bytes=memory,
        dispersion=result.dispersion,
        fallback_triggered=result.fallback_triggered,
        iterations_used=result.iterations_used,
    )


def build_cells(
    sizes: Sequence[int],
    variants: Sequence[Union[SolveMode, str]],
    *,
    repetitions: int,
    base_seed: int,
    m: int = 2,
    log_level: str = "WARNING",
) -> List[BenchCell]:
    return [
        BenchCell(n, m, SolveMode(variant), rep, base_seed + rep, log_level)
        for n in sizes
        for rep in range(repetitions)
        for variant in variants
    ]


def run_benchmark(
    cells: Sequence[BenchCell], *, jobs: int = 1, timeout: float = 600.0
) -> List[BenchRecord]:
    """Run each cell in its own spawned worker; ``jobs`` workers at a time."""
    context = multiprocessing.get_context("spawn")
    records: List[BenchRecord] = []
    with context.Pool(processes=jobs, maxtasksperchild=1) as pool:
        pending = [pool.apply_async(run_cell, (cell,)) for cell in cells]
        for handle in pending:
            record = handle.get(timeout=timeout)
            logger.info(
                f"simple-mdcc: bench n={record.n} variant={record.variant} "
                f"rep={record.repetition} ms={record.ms:.1f} "
                f"mem={record.peak_mem_bytes if record.peak_mem_bytes is not None else MEMORY_UNAVAILABLE} "
                f"fallback={record.fallback_triggered}"
            )
            records.append(record)
    return records


def write_timing_csv(path: Union[str, Path], records: Iterable[BenchRecord]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(TIMING_HEADER)
        for record in records:
            writer.writerow(
                (
                    record.n,
                    record.variant,
                    record.repetition,
                    f"{record.ms:.3f}",
                    record.peak_mem_bytes
                    if record.peak_mem_bytes is not None
                    else MEMORY_UNAVAILABLE,
                )
            )


@dataclass(frozen=True)
class SurveyReport:
    n: int
    runs: int
    fallback_runs: int
    mean_iterations: float

    @property
    def fallback_fraction(self) -> float:
        return self.fallback_runs / self.runs if self.runs else 0.0


def fallback_survey(
    *, n: int = 1000, m: int = 2, runs: int = 100, base_seed: int = 0
) -> SurveyReport:
    """How often the heap variant needs the full-sort fallback on balanced normal data."""
    constraint = CardinalityConstraint(n // 2, n - n // 2)
    fallback_runs = 0
    iterations: List[int] = []
    for run in range(runs):
        result = solve(generate_normal(n, m, base_seed + run), constraint, SolveMode.HEAP)
        fallback_runs += result.fallback_triggered
        iterations.append(result.iterations_used)
    report = SurveyReport(
        n=n,
        runs=runs,
        fallback_runs=fallback_runs,
        mean_iterations=statistics.fmean(iterations) if iterations else 0.0,
    )
    logger.info(
        f"simple-mdcc: fallback 调查 n={n}, runs={runs}, "
        f"fallback_fraction={report.fallback_fraction:.3f}, "
        f"mean_iterations={report.mean_iterations:.1f}"
    )
    return report


def read_timing_csv(path: Union[str, Path]) -> List[BenchRecord]:
    """Read a timing CSV back; only the timing columns are populated."""
    records: List[BenchRecord] = []
    with Path(path).open("r", encoding="utf-8", newline="") as handle:
        for row in csv.DictReader(handle):
            memory = row["peak_mem_bytes"]
            records.append(
                BenchRecord(
                    n=int(row["n"]),
                    variant=row["variant"],
                    repetition=int(row["repetition"]),
                    ms=float(row["ms"]),
                    peak_mem_bytes=None if memory == MEMORY_UNAVAILABLE else int(memory),
                    dispersion=math.nan,
                    fallback_triggered=False,
                    iterations_used=0,
                )
            )
    return records


def medians(
    records: Iterable[BenchRecord], field: str
) -> Dict[str, Dict[int, float]]:
    """``{variant: {n: median of field}}``, skipping unavailable values."""
    grouped: Dict[str, Dict[int, List[float]]] = {}
    for record in records:
        value = getattr(record, field)
        if value is None:
            continue
        grouped.setdefault(record.variant, {}).setdefault(record.n, []).append(float(value))
    return {
        variant: {n: statistics.median(values) for n, values in sorted(by_n.items())}
        for variant, by_n in grouped.items()
    }


def fit_loglog_exponent(series: Dict[int, float]) -> float:
    """Slope of log(value) against log(n); values below one byte count as one."""
    if len(series) < 2:
        return math.nan
    sizes = np.log(np.fromiter(series.keys(), dtype=np.float64))
    values = np.log(np.maximum(np.fromiter(series.values(), dtype=np.float64), 1.0))
    slope, _ = np.polyfit(sizes, values, 1)
    return float(slope)
