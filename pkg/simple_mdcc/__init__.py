"""Exact two-group maximum dispersion with cardinality constraints."""

from __future__ import annotations

from .utils.log import logger as _logger

# 作为库使用时默认静默，setup_logging() 会重新打开
_logger.disable(__name__)

# 先导入插件（让插件注册配置字段和 hook）
from . import plugins as _simple_mdcc_plugins  # noqa: F401
from .colcc import solve_2colcc, subset_sum_table
from .config import Config, configure_solver, get_solver_config, reset_solver_config
from .dataset import RunSummary, generate_normal, ingest_csv, load_assignment_csv, write_assignment_csv
from .dispersion import solve, solve_full, solve_heap
from .distance_stream import all_distances_sorted, min_pairwise_squared, smallest_n_distances
from .exceptions import (
    CardinalityMismatch,
    DimensionMismatch,
    DuplicateEdge,
    EmptyFile,
    InstanceTooLarge,
    MDCCError,
    NonFiniteFeature,
    ParseError,
    SweepInvariantViolation,
)
from .graph import ThresholdGraph, bipartition_components
from .models import (
    INFINITE,
    Assignment,
    CardinalityConstraint,
    DispersionResult,
    DistanceEntry,
    PointSet,
    ResultVariant,
    SolveMode,
    dispersion_of,
)
from .plugin_system import SweepHook, register_sweep_hook

__version__ = "0.1.0"

__all__ = [
    "INFINITE",
    "Assignment",
    "CardinalityConstraint",
    "CardinalityMismatch",
    "Config",
    "DimensionMismatch",
    "DispersionResult",
    "DistanceEntry",
    "DuplicateEdge",
    "EmptyFile",
    "InstanceTooLarge",
    "MDCCError",
    "NonFiniteFeature",
    "ParseError",
    "PointSet",
    "ResultVariant",
    "RunSummary",
    "SolveMode",
    "SweepHook",
    "SweepInvariantViolation",
    "ThresholdGraph",
    "all_distances_sorted",
    "bipartition_components",
    "configure_solver",
    "dispersion_of",
    "generate_normal",
    "get_solver_config",
    "ingest_csv",
    "load_assignment_csv",
    "min_pairwise_squared",
    "register_sweep_hook",
    "reset_solver_config",
    "smallest_n_distances",
    "solve",
    "solve_2colcc",
    "solve_full",
    "solve_heap",
    "subset_sum_table",
    "write_assignment_csv",
]
