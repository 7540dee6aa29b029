from __future__ import annotations

from typing import Iterator, List

import pytest

from simple_mdcc.config import reset_solver_config
from simple_mdcc.utils.log import logger


@pytest.fixture(autouse=True)
def _fresh_config(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    for name in (
        "SIMPLE_MDCC_DEFAULT_VARIANT",
        "SIMPLE_MDCC_VERIFY_CERTIFICATE",
        "SIMPLE_MDCC_DEBUG_MONOTONE",
        "SIMPLE_MDCC_TRACE_INTERVAL",
    ):
        monkeypatch.delenv(name, raising=False)
    reset_solver_config()
    yield
    reset_solver_config()


@pytest.fixture
def log_messages() -> Iterator[List[str]]:
    messages: List[str] = []
    logger.enable("simple_mdcc")
    sink_id = logger.add(lambda message: messages.append(str(message)), level="DEBUG")
    yield messages
    logger.remove(sink_id)
    logger.disable("simple_mdcc")
