"""simple-mdcc 命令行：求解一个实例、跑基准测试或统计 heap 变体的回退比例。

运行：
    simple-mdcc --input points.csv --c1 50 --c2 50 --out assignment.csv
    simple-mdcc --generate 1000,2 --seed 7 --balanced --variant heap
    simple-mdcc --bench 1000:10000:1000 --reps 10 --bench-out bench.csv
    simple-mdcc --fallback-survey 100 --survey-n 1000

退出码：0 成功，1 参数错误，2 数据错误。
"""

from __future__ import annotations

import argparse
import multiprocessing
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .bench import (
    build_cells,
    fallback_survey,
    measure_solve,
    parse_range,
    run_benchmark,
    write_timing_csv,
)
from .config import get_solver_config
from .dataset import RunSummary, generate_normal, ingest_csv, write_assignment_csv
from .exceptions import MDCCError
from .models import CardinalityConstraint, PointSet, SolveMode
from .utils.log import logger, setup_logging
from .utils.numfmt import format_dispersion

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class RunConfig(BaseModel):
    """Validated command-line request."""

    input_path: Optional[Path] = None
    generate: Optional[Tuple[int, int]] = None
    seed: int = Field(default=0, ge=0, lt=2**64)
    c1: Optional[int] = Field(default=None, ge=0)
    c2: Optional[int] = Field(default=None, ge=0)
    balanced: bool = False
    variant: Optional[SolveMode] = None
    out: Path = Path("assignment.csv")
    summary: Optional[Path] = None

    bench: Optional[str] = None
    bench_variants: List[SolveMode] = Field(
        default_factory=lambda: [SolveMode.FULL, SolveMode.HEAP]
    )
    bench_m: int = Field(default=2, ge=1)
    reps: int = Field(default=10, ge=1)
    bench_out: Path = Path("bench_timing.csv")
    jobs: Optional[int] = Field(default=None, ge=1)

    fallback_survey: Optional[int] = Field(default=None, ge=1)
    survey_n: int = Field(default=1000, ge=2)

    @field_validator("generate")
    @classmethod
    def _check_generate(cls, value: Optional[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
        if value is not None and (value[0] < 1 or value[1] < 1):
            raise ValueError(f"--generate needs N >= 1 and M >= 1, got {value[0]},{value[1]}")
        return value

    @field_validator("bench")
    @classmethod
    def _check_bench(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            parse_range(value)
        return value

    @model_validator(mode="after")
    def _check_mode(self) -> "RunConfig":
        if self.bench is not None or self.fallback_survey is not None:
            if self.bench is not None and self.fallback_survey is not None:
                raise ValueError("--bench and --fallback-survey are separate modes")
            if self.input_path is not None or self.generate is not None:
                raise ValueError("benchmark modes generate their own data; drop --input/--generate")
            return self

        if (self.input_path is None) == (self.generate is None):
            raise ValueError("exactly one of --input / --generate is required")
        if self.balanced:
            if self.c1 is not None or self.c2 is not None:
                raise ValueError("--balanced cannot be combined with --c1/--c2")
            if self.generate is not None and self.generate[0] % 2:
                raise ValueError(f"--balanced requires an even n, got n={self.generate[0]}")
        elif self.c1 is None or self.c2 is None:
            raise ValueError("give both --c1 and --c2, or --balanced")
        return self

    @property
    def summary_path(self) -> Path:
        if self.summary is not None:
            return self.summary
        return self.out.with_name(f"{self.out.stem}.summary.json")


def _load_points(config: RunConfig) -> PointSet:
    if config.input_path is not None:
        return ingest_csv(config.input_path)
    assert config.generate is not None
    n, m = config.generate
    return generate_normal(n, m, config.seed)


def _constraint_for(config: RunConfig, points: PointSet) -> CardinalityConstraint:
    if config.balanced:
        return CardinalityConstraint.balanced(points.n)
    assert config.c1 is not None and config.c2 is not None
    return CardinalityConstraint(config.c1, config.c2)


def _run_solve(config: RunConfig) -> int:
    points = _load_points(config)
    constraint = _constraint_for(config, points)
    result, elapsed_ms, memory = measure_solve(points, constraint, config.variant)

    write_assignment_csv(config.out, result.assignment)
    summary = RunSummary.from_result(
        result,
        points=points,
        c1=constraint.c1,
        c2=constraint.c2,
        wall_clock_ms=elapsed_ms,
        peak_mem_bytes=memory,
    )
    summary.write(config.summary_path)
    logger.info(
        f"simple-mdcc: 结果已写入 {config.out} / {config.summary_path} "
        f"(dispersion={summary.dispersion}, {elapsed_ms:.1f} ms)"
    )
    print(
        f"dispersion={format_dispersion(result.dispersion)} "
        f"variant={result.variant.value} iterations={result.iterations_used} "
        f"fallback={str(result.fallback_triggered).lower()}"
    )
    return EXIT_OK


def _run_bench(config: RunConfig) -> int:
    settings = get_solver_config()
    assert config.bench is not None
    cells = build_cells(
        parse_range(config.bench),
        config.bench_variants,
        repetitions=config.reps,
        base_seed=config.seed,
        m=config.bench_m,
        log_level=settings.simple_mdcc_log_level,
    )
    logger.info(f"simple-mdcc: 基准测试共 {len(cells)} 个单元")
    try:
        records = run_benchmark(
            cells,
            jobs=config.jobs or settings.simple_mdcc_bench_jobs,
            timeout=settings.simple_mdcc_bench_timeout,
        )
    except multiprocessing.TimeoutError:
        print(
            f"[fatal] a benchmark cell exceeded {settings.simple_mdcc_bench_timeout}s",
            file=sys.stderr,
        )
        return EXIT_DATA
    write_timing_csv(config.bench_out, records)
    print(f"[ok] {len(records)} rows -> {config.bench_out}")
    return EXIT_OK


def _run_survey(config: RunConfig) -> int:
    assert config.fallback_survey is not None
    report = fallback_survey(
        n=config.survey_n, m=config.bench_m, runs=config.fallback_survey, base_seed=config.seed
    )
    print(
        f"n={report.n} runs={report.runs} fallback_runs={report.fallback_runs} "
        f"fallback_fraction={report.fallback_fraction:.4f} "
        f"mean_iterations={report.mean_iterations:.2f}"
    )
    return EXIT_OK


def run(config: RunConfig) -> int:
    """Execute one validated request and return the process exit code."""
    try:
        if config.bench is not None:
            return _run_bench(config)
        if config.fallback_survey is not None:
            return _run_survey(config)
        return _run_solve(config)
    except (MDCCError, OSError) as exc:
        print(f"[fatal] {exc}", file=sys.stderr)
        return EXIT_DATA


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"[fatal] {message}\n")


def _pair(text: str) -> Tuple[int, int]:
    try:
        n, m = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,M, got {text!r}") from None
    return n, m


def _variants(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _build_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="simple-mdcc", description=(__doc__ or "").splitlines()[0])
    source = p.add_argument_group("data")
    source.add_argument("--input", dest="input_path", default=None, help="CSV, 每行一个点")
    source.add_argument("--generate", type=_pair, default=None, metavar="N,M")
    source.add_argument("--seed", type=int, default=0)

    solve = p.add_argument_group("solve")
    solve.add_argument("--c1", type=int, default=None)
    solve.add_argument("--c2", type=int, default=None)
    solve.add_argument("--balanced", action="store_true", help="c1 = c2 = n/2")
    solve.add_argument("--variant", choices=[mode.value for mode in SolveMode], default=None)
    solve.add_argument("--out", default="assignment.csv")
    solve.add_argument("--summary", default=None, help="默认为 <out>.summary.json")

    bench = p.add_argument_group("benchmark")
    bench.add_argument("--bench", default=None, metavar="START:STOP:STEP")
    bench.add_argument("--bench-variants", type=_variants, default=["full", "heap"])
    bench.add_argument("--bench-m", type=int, default=2)
    bench.add_argument("--reps", type=int, default=10)
    bench.add_argument("--bench-out", default="bench_timing.csv")
    bench.add_argument("--jobs", type=int, default=None)
    bench.add_argument("--fallback-survey", type=int, default=None, metavar="R")
    bench.add_argument("--survey-n", type=int, default=1000)

    p.add_argument("--log-level", default=None)
    return p


def _validation_message(exc: ValidationError) -> str:
    return "; ".join(
        error["msg"].removeprefix("Value error, ") for error in exc.errors()
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        setup_logging(args.log_level or get_solver_config().simple_mdcc_log_level)
    except ValueError as exc:
        print(f"[fatal] invalid log level: {exc}", file=sys.stderr)
        return EXIT_USAGE
    options = {k: v for k, v in vars(args).items() if k != "log_level" and v is not None}
    try:
        config = RunConfig(**options)
    except ValidationError as exc:
        print(f"[fatal] {_validation_message(exc)}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
