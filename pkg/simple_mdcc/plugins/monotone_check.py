from __future__ import annotations

import math
from typing import TYPE_CHECKING

from ..colcc import solve_2colcc
from ..exceptions import SweepInvariantViolation
from ..plugin_config_inject import register_plugin_config_field
from ..plugin_system import BreakPayload, SweepHook, register_sweep_hook
from ..utils.log import logger

register_plugin_config_field(
    "simple_mdcc_debug_monotone",
    bool,
    default=False,
    description="调试模式：中断后继续加入剩余阈值，校验之后的阈值全部不可行（开销很大）",
)

if TYPE_CHECKING:
    from ..config import Config


def _get_plugin_config() -> "Config":
    from ..config import get_solver_config

    return get_solver_config()


class MonotoneBreakCheck(SweepHook):
    """Once a threshold is infeasible, every larger threshold must stay infeasible."""

    priority = 100

    def on_break(self, payload: BreakPayload) -> None:
        if not _get_plugin_config().simple_mdcc_debug_monotone:
            return
        graph = payload.graph
        checked = 0
        for batch in payload.remaining_batches:
            graph.add_edges(batch)
            checked += 1
            if solve_2colcc(graph, payload.constraint) is not None:
                raise SweepInvariantViolation(
                    f"threshold δ={math.sqrt(batch[0].d2):.17g} is feasible after the "
                    f"sweep broke at δ={math.sqrt(payload.threshold_d2):.17g}"
                )
        logger.debug(
            f"simple-mdcc: [{payload.stage}] 单调性校验通过，额外检查了 {checked} 个阈值"
        )


register_sweep_hook(MonotoneBreakCheck())
