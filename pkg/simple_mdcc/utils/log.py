from __future__ import annotations

import sys

from loguru import logger

__all__ = ["logger", "setup_logging"]

_PACKAGE = "simple_mdcc"
_LOG_FORMAT = "{time:HH:mm:ss.SSS} | {level: <8} | {message}"


def _stderr_sink(message: str) -> None:
    # 每次都取当前的 sys.stderr，测试替换 stderr 后仍能正常输出
    sys.stderr.write(message)


def setup_logging(level: str = "INFO") -> None:
    """Replace loguru's default sink with a single stderr sink at ``level``.

    Also re-enables the ``simple_mdcc`` records that the package silences on import.
    """
    logger.remove()
    logger.enable(_PACKAGE)
    logger.add(_stderr_sink, level=level.upper(), format=_LOG_FORMAT)
