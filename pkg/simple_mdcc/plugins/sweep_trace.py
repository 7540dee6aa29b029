from __future__ import annotations

import math
from typing import TYPE_CHECKING

from ..plugin_config_inject import register_plugin_config_field
from ..plugin_system import (
    BreakPayload,
    SweepHook,
    ThresholdPayload,
    register_sweep_hook,
)
from ..utils.log import logger

register_plugin_config_field(
    "simple_mdcc_trace_interval",
    int,
    default=0,
    description="每隔多少个阈值输出一次 sweep 进度（0 表示关闭）",
    ge=0,
)

if TYPE_CHECKING:
    from ..config import Config


def _get_plugin_config() -> "Config":
    """延迟导入主配置，避免循环依赖。"""
    from ..config import get_solver_config

    return get_solver_config()


class SweepTraceHook(SweepHook):
    """Log sweep progress every ``simple_mdcc_trace_interval`` thresholds."""

    priority = 10

    def on_threshold(self, payload: ThresholdPayload) -> None:
        interval = _get_plugin_config().simple_mdcc_trace_interval
        if interval <= 0 or payload.iteration % interval:
            return
        logger.debug(
            f"simple-mdcc: [{payload.stage}] 第 {payload.iteration} 个阈值 "
            f"δ={math.sqrt(payload.threshold_d2):.6g}, 新增边 {payload.batch_size}, "
            f"总边数 {payload.graph.edge_count}, {'可行' if payload.feasible else '不可行'}"
        )

    def on_break(self, payload: BreakPayload) -> None:
        if _get_plugin_config().simple_mdcc_trace_interval <= 0:
            return
        logger.debug(
            f"simple-mdcc: [{payload.stage}] 在第 {payload.iteration} 个阈值处中断 "
            f"(δ={math.sqrt(payload.threshold_d2):.17g}, 边数 {payload.graph.edge_count})"
        )


register_sweep_hook(SweepTraceHook())
