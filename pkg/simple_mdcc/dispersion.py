"""Threshold sweep: full-sort variant, heap variant with fallback, and dispatch."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Union

from .colcc import solve_2colcc
from .distance_stream import (
    SortedDistanceList,
    all_distances_sorted,
    min_pairwise_squared,
    smallest_n_distances,
)
from .graph import ThresholdGraph
from .models import (
    INFINITE,
    Assignment,
    CardinalityConstraint,
    DispersionResult,
    PointsLike,
    PointSet,
    ResultVariant,
    SolveMode,
    validate_instance,
)
from .plugin_system import (
    BreakPayload,
    ResultPayload,
    ThresholdPayload,
    emit_on_break,
    emit_on_result,
    emit_on_threshold,
)
from .utils.log import logger


@dataclass
class SweepState:
    graph: ThresholdGraph
    last_feasible_assignment: Optional[Assignment] = None
    current_threshold: float = -math.inf
    distinct_values_processed: int = 0


@dataclass(frozen=True)
class SweepOutcome:
    broke: bool
    state: SweepState


def _sweep(
    points: PointSet,
    constraint: CardinalityConstraint,
    distances: SortedDistanceList,
    *,
    stage: str,
) -> SweepOutcome:
    state = SweepState(ThresholdGraph(points.n))
    batches = distances.batches()
    for batch in batches:
        state.current_threshold = batch[0].d2
        state.graph.add_edges(batch)
        state.distinct_values_processed += 1
        coloring = solve_2colcc(state.graph, constraint)
        emit_on_threshold(
            ThresholdPayload(
                points=points,
                constraint=constraint,
                stage=stage,
                iteration=state.distinct_values_processed,
                threshold_d2=state.current_threshold,
                batch_size=len(batch),
                feasible=coloring is not None,
                graph=state.graph,
            )
        )
        if coloring is None:
            emit_on_break(
                BreakPayload(
                    points=points,
                    constraint=constraint,
                    stage=stage,
                    iteration=state.distinct_values_processed,
                    threshold_d2=state.current_threshold,
                    graph=state.graph,
                    remaining_batches=batches,
                )
            )
            return SweepOutcome(True, state)
        state.last_feasible_assignment = coloring
    return SweepOutcome(False, state)


def _result_from_sweep(
    outcome: SweepOutcome,
    constraint: CardinalityConstraint,
    variant: ResultVariant,
) -> DispersionResult:
    state = outcome.state
    # 第一个阈值就不可行时，任意满足基数的划分都是最优的
    assignment = state.last_feasible_assignment or Assignment.canonical(constraint)
    if outcome.broke:
        dispersion = math.sqrt(state.current_threshold)
    elif constraint.c1 <= 1 and constraint.c2 <= 1:
        dispersion = INFINITE
    else:
        dispersion = math.sqrt(state.current_threshold)
    return DispersionResult(
        dispersion=dispersion,
        assignment=assignment,
        iterations_used=state.distinct_values_processed,
        variant=variant,
        fallback_triggered=False,
    )


def _solve_degenerate(
    points: PointSet, constraint: CardinalityConstraint, variant: ResultVariant
) -> DispersionResult:
    """c1 == 0 or c2 == 0: one group holds every item, no sweep needed."""
    label = 2 if constraint.c1 == 0 else 1
    d2 = min_pairwise_squared(points)
    return DispersionResult(
        dispersion=INFINITE if math.isinf(d2) else math.sqrt(d2),
        assignment=Assignment((label,) * points.n),
        iterations_used=0,
        variant=variant,
        fallback_triggered=False,
    )


def _is_degenerate(constraint: CardinalityConstraint) -> bool:
    return constraint.c1 == 0 or constraint.c2 == 0


def _solve_full(points: PointSet, constraint: CardinalityConstraint) -> DispersionResult:
    if _is_degenerate(constraint):
        return _solve_degenerate(points, constraint, ResultVariant.FULL_SORT)
    outcome = _sweep(points, constraint, all_distances_sorted(points), stage="full")
    return _result_from_sweep(outcome, constraint, ResultVariant.FULL_SORT)


def _solve_heap(points: PointSet, constraint: CardinalityConstraint) -> DispersionResult:
    if _is_degenerate(constraint):
        return _solve_degenerate(points, constraint, ResultVariant.HEAP_ONLY)
    retained = smallest_n_distances(points)
    outcome = _sweep(points, constraint, retained, stage="heap")
    if outcome.broke or len(retained) == points.pair_count:
        return _result_from_sweep(outcome, constraint, ResultVariant.HEAP_ONLY)

    logger.info(
        f"simple-mdcc: 最小 {len(retained)} 个距离内未出现不可行阈值，回退到全量排序 "
        f"(n={points.n}, c1={constraint.c1}, c2={constraint.c2})"
    )
    full = _solve_full(points, constraint)
    return replace(
        full, variant=ResultVariant.HEAP_THEN_FALLBACK, fallback_triggered=True
    )


def _finish(
    points: PointSet, constraint: CardinalityConstraint, result: DispersionResult
) -> DispersionResult:
    logger.debug(
        f"simple-mdcc: 求解完成 variant={result.variant.value}, "
        f"dispersion={result.dispersion}, iterations={result.iterations_used}, "
        f"fallback={result.fallback_triggered}"
    )
    emit_on_result(ResultPayload(points=points, constraint=constraint, result=result))
    return result


def solve_full(points: PointsLike, constraint: CardinalityConstraint) -> DispersionResult:
    """Sweep over every pairwise distance in ascending order."""
    point_set = validate_instance(points, constraint)
    return _finish(point_set, constraint, _solve_full(point_set, constraint))


def solve_heap(points: PointsLike, constraint: CardinalityConstraint) -> DispersionResult:
    """Sweep over the n smallest distances; fall back to the full sweep if it never breaks."""
    point_set = validate_instance(points, constraint)
    return _finish(point_set, constraint, _solve_heap(point_set, constraint))


def solve(
    points: PointsLike,
    constraint: CardinalityConstraint,
    variant: Union[SolveMode, str, None] = None,
) -> DispersionResult:
    """Solve 2-MDCC exactly. ``variant`` defaults to the configured one; auto means heap."""
    if variant is None:
        from .config import get_solver_config

        variant = get_solver_config().simple_mdcc_default_variant
    mode = SolveMode(variant)
    point_set = validate_instance(points, constraint)
    logger.debug(
        f"simple-mdcc: 开始求解 (n={point_set.n}, m={point_set.m}, "
        f"c1={constraint.c1}, c2={constraint.c2}, variant={mode.value})"
    )
    if mode is SolveMode.FULL:
        result = _solve_full(point_set, constraint)
    else:
        result = _solve_heap(point_set, constraint)
    return _finish(point_set, constraint, result)
