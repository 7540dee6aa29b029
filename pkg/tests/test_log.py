from __future__ import annotations

import subprocess
import sys
from pathlib import Path

from simple_mdcc.distance_stream import all_distances_sorted
from simple_mdcc.utils.log import logger, setup_logging

from .helpers import line_points

ROOT = Path(__file__).resolve().parents[1]


def test_import_writes_nothing_to_stderr():
    completed = subprocess.run(
        [sys.executable, "-c", "import simple_mdcc"],
        cwd=ROOT,
        capture_output=True,
        text=True,
        check=True,
    )
    assert completed.stderr == ""


def test_package_records_stay_silent_until_setup_logging():
    messages = []
    logger.disable("simple_mdcc")
    sink_id = logger.add(lambda message: messages.append(str(message)), level="DEBUG")
    try:
        all_distances_sorted(line_points(0, 1, 3))
        assert messages == []
    finally:
        logger.remove(sink_id)

    setup_logging("DEBUG")
    sink_id = logger.add(lambda message: messages.append(str(message)), level="DEBUG")
    try:
        all_distances_sorted(line_points(0, 1, 3))
        assert any("全量排序完成" in message for message in messages)
    finally:
        logger.remove(sink_id)
        logger.disable("simple_mdcc")
