from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

from .graph import ThresholdGraph
from .models import (
    CardinalityConstraint,
    DispersionResult,
    DistanceEntry,
    PointSet,
)
from .utils.log import logger


@dataclass
class ThresholdPayload:
    """Passed to hooks after every threshold batch has been decided."""

    points: PointSet
    constraint: CardinalityConstraint
    stage: str
    iteration: int
    threshold_d2: float
    batch_size: int
    feasible: bool
    graph: ThresholdGraph


@dataclass
class BreakPayload:
    """Passed to hooks once the sweep meets its first infeasible threshold.

    ``graph`` already contains the edges of ``threshold_d2``; the sweep no
    longer uses it, so hooks may keep adding ``remaining_batches`` to it.
    """

    points: PointSet
    constraint: CardinalityConstraint
    stage: str
    iteration: int
    threshold_d2: float
    graph: ThresholdGraph
    remaining_batches: Iterator[List[DistanceEntry]]
    extra: Dict[str, Any] = field(default_factory=dict)


@dataclass
class ResultPayload:
    """Passed to hooks after a public solve call produced its result."""

    points: PointSet
    constraint: CardinalityConstraint
    result: DispersionResult
    extra: Dict[str, Any] = field(default_factory=dict)


class SweepHook:
    """Base class for sweep hooks."""

    priority: int = 0

    def on_threshold(self, payload: ThresholdPayload) -> None:
        """Observe one decided threshold."""

    def on_break(self, payload: BreakPayload) -> None:
        """Observe the first infeasible threshold."""

    def on_result(self, payload: ResultPayload) -> None:
        """Observe the final result of a solve call."""


class HookManager:
    def __init__(self) -> None:
        self._hooks: List[Tuple[int, SweepHook]] = []

    def register(self, hook: SweepHook, *, priority: int | None = None) -> None:
        hook_priority = priority if priority is not None else getattr(hook, "priority", 0)
        self._hooks.append((hook_priority, hook))
        self._hooks.sort(key=lambda item: item[0], reverse=True)
        self._log_hook_order()

    def unregister(self, hook: SweepHook) -> None:
        self._hooks = [(p, h) for p, h in self._hooks if h is not hook]

    @property
    def hooks(self) -> List[SweepHook]:
        return [hook for _, hook in self._hooks]

    def _log_hook_order(self) -> None:
        if not self._hooks:
            logger.info("simple-mdcc: 当前未加载任何 hook。")
            return
        order = ", ".join(
            f"{hook.__class__.__name__}(priority={priority})"
            for priority, hook in self._hooks
        )
        logger.debug(f"simple-mdcc: hook 执行顺序 -> {order}")

    def run_on_threshold(self, payload: ThresholdPayload) -> None:
        for _, hook in self._hooks:
            hook.on_threshold(payload)

    def run_on_break(self, payload: BreakPayload) -> None:
        for _, hook in self._hooks:
            hook.on_break(payload)

    def run_on_result(self, payload: ResultPayload) -> None:
        for _, hook in self._hooks:
            hook.on_result(payload)


hook_manager = HookManager()


def register_sweep_hook(hook: SweepHook, *, priority: Optional[int] = None) -> None:
    hook_manager.register(hook, priority=priority)


def emit_on_threshold(payload: ThresholdPayload) -> None:
    hook_manager.run_on_threshold(payload)


def emit_on_break(payload: BreakPayload) -> None:
    hook_manager.run_on_break(payload)


def emit_on_result(payload: ResultPayload) -> None:
    hook_manager.run_on_result(payload)
