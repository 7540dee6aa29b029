from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .plugin_config_inject import inject_plugin_fields_to_config
from .utils.log import logger

VariantName = Literal["full", "heap", "auto"]


class Config(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    simple_mdcc_default_variant: VariantName = Field(
        default="auto", description="未显式指定时使用的求解变体（auto 等同于 heap）"
    )
    simple_mdcc_log_level: str = Field(default="INFO", description="日志级别")
    simple_mdcc_oracle_max_partitions: int = Field(
        default=10**6,
        ge=1,
        description="brute_force_mdcc 最多枚举的划分数 C(n, c1)",
    )
    simple_mdcc_oracle_max_vertices: int = Field(
        default=20,
        ge=1,
        le=24,
        description="brute_force_2colcc 允许的最大顶点数（枚举 2^n 种着色）",
    )
    simple_mdcc_oracle_max_items: int = Field(
        default=20,
        ge=0,
        le=24,
        description="brute_force_subset_sum 允许的最大元素个数",
    )
    simple_mdcc_bench_jobs: int = Field(
        default=1, ge=1, description="基准测试并行进程数，默认 1（顺序执行避免计时干扰）"
    )
    simple_mdcc_bench_timeout: float = Field(
        default=600.0, gt=0, description="单个基准测试单元的超时时间（秒）"
    )

    @field_validator("simple_mdcc_log_level")
    @classmethod
    def _normalize_level(cls, value: str) -> str:
        return value.strip().upper() or "INFO"

    @field_validator("simple_mdcc_default_variant", mode="before")
    @classmethod
    def _normalize_variant(cls, value: Any) -> Any:
        if isinstance(value, str):
            return value.strip().lower()
        return value


_config: Optional[Config] = None


def _settings_class() -> type[Config]:
    # 先导入插件（让插件注册配置字段）
    from . import plugins as _simple_mdcc_plugins  # noqa: F401

    return inject_plugin_fields_to_config(Config)


def get_solver_config() -> Config:
    """Return the process-wide configuration, loading it on first use."""
    global _config
    if _config is None:
        _config = _settings_class()()
        logger.debug(f"simple-mdcc: 配置已加载 {_config.model_dump()}")
    return _config


def configure_solver(**overrides: Any) -> Config:
    """Reload the configuration with explicit field overrides (env is still read)."""
    global _config
    _config = _settings_class()(**overrides)
    return _config


def reset_solver_config() -> None:
    global _config
    _config = None
