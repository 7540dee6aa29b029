from __future__ import annotations

import json
import math

import numpy as np
import pytest

from simple_mdcc.dataset import (
    RunSummary,
    generate_normal,
    ingest_csv,
    load_assignment_csv,
    write_assignment_csv,
)
from simple_mdcc.exceptions import EmptyFile, NonFiniteFeature, ParseError
from simple_mdcc.models import Assignment, CardinalityConstraint, DispersionResult, ResultVariant
from simple_mdcc.dispersion import solve
from simple_mdcc.utils.numfmt import format_dispersion

from .helpers import line_points, parse_dispersion


def _write(tmp_path, text, name="points.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_ingest_single_column(tmp_path):
    points = ingest_csv(_write(tmp_path, "0\n1\n3\n"))
    assert (points.n, points.m) == (3, 1)
    assert points.data[:, 0].tolist() == [0.0, 1.0, 3.0]


def test_ingest_skips_header(tmp_path):
    points = ingest_csv(_write(tmp_path, "x,y\n0,0\n1,0\n"))
    assert (points.n, points.m) == (2, 2)


def test_ingest_handles_bom_and_blank_lines(tmp_path):
    path = tmp_path / "bom.csv"
    path.write_bytes("\ufeffa,b\n1.5,2\n\n-3e2,4\n".encode("utf-8"))
    assert ingest_csv(path).data.tolist() == [[1.5, 2.0], [-300.0, 4.0]]


def test_ingest_reports_position(tmp_path):
    with pytest.raises(ParseError, match="row 1 col 2") as excinfo:
        ingest_csv(_write(tmp_path, "0,a\n"))
    assert (excinfo.value.row, excinfo.value.column) == (1, 2)


def test_ingest_ragged_row(tmp_path):
    with pytest.raises(ParseError) as excinfo:
        ingest_csv(_write(tmp_path, "1,2\n3\n"))
    assert excinfo.value.row == 2


def test_ingest_rejects_invalid_utf8(tmp_path):
    path = tmp_path / "latin.csv"
    path.write_bytes(b"0,1\n\xff\xfe,2\n")
    with pytest.raises(ParseError, match="row 2") as excinfo:
        ingest_csv(path)
    assert excinfo.value.row == 2


@pytest.mark.parametrize("text", ["0\nnan\n", "1,inf\n"])
def test_ingest_rejects_non_finite(tmp_path, text):
    with pytest.raises(NonFiniteFeature):
        ingest_csv(_write(tmp_path, text))


@pytest.mark.parametrize("text", ["", "\n\n", "x,y\n"])
def test_ingest_empty(tmp_path, text):
    with pytest.raises(EmptyFile):
        ingest_csv(_write(tmp_path, text))


def test_ingest_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        ingest_csv(tmp_path / "absent.csv")


def test_generate_normal_is_deterministic():
    first = generate_normal(5, 2, 42)
    second = generate_normal(5, 2, 42)
    assert first.data.tobytes() == second.data.tobytes()
    assert generate_normal(5, 2, 43).data.tobytes() != first.data.tobytes()


def test_generate_normal_is_standard():
    points = generate_normal(10_000, 2, 1)
    assert np.all(np.abs(points.data.mean(axis=0)) < 0.05)
    assert np.all(np.abs(points.data.std(axis=0) - 1.0) < 0.05)


def test_generate_normal_single_value():
    points = generate_normal(1, 1, 0)
    assert points.data.shape == (1, 1)
    assert math.isfinite(points.data[0, 0])


@pytest.mark.parametrize(("n", "m", "seed"), [(0, 2, 1), (3, 0, 1), (3, 2, -1), (3, 2, 2**64)])
def test_generate_normal_rejects_bad_arguments(n, m, seed):
    with pytest.raises(ValueError):
        generate_normal(n, m, seed)


def test_assignment_csv_layout_and_round_trip(tmp_path):
    path = tmp_path / "out" / "assignment.csv"
    write_assignment_csv(path, Assignment((1, 2, 1)))
    assert path.read_text(encoding="utf-8") == "item_index,group\n0,1\n1,2\n2,1\n"
    assert load_assignment_csv(path) == Assignment((1, 2, 1))


def test_load_assignment_rejects_bad_header(tmp_path):
    with pytest.raises(ParseError):
        load_assignment_csv(_write(tmp_path, "i,g\n0,1\n", "a.csv"))


def test_load_assignment_rejects_out_of_order_rows(tmp_path):
    with pytest.raises(ParseError):
        load_assignment_csv(_write(tmp_path, "item_index,group\n1,1\n0,2\n", "a.csv"))


def test_dispersion_text_round_trip():
    value = math.sqrt(2.0)
    assert parse_dispersion(format_dispersion(value)) == value
    assert format_dispersion(math.inf) == "inf"
    assert parse_dispersion("inf") == math.inf


def test_run_summary_json(tmp_path):
    points = line_points(0, 1, 3)
    result = solve(points, CardinalityConstraint(2, 1), "full")
    summary = RunSummary.from_result(
        result, points=points, c1=2, c2=1, wall_clock_ms=1.25, peak_mem_bytes=None
    )
    path = tmp_path / "summary.json"
    summary.write(path)
    payload = json.loads(path.read_text(encoding="utf-8"))
    assert parse_dispersion(payload["dispersion"]) == 3.0
    assert payload["variant"] == "FullSort"
    assert payload["iterations_used"] == 3
    assert payload["fallback_triggered"] is False
    assert payload["peak_mem_bytes"] is None
    assert (payload["n"], payload["m"], payload["c1"], payload["c2"]) == (3, 1, 2, 1)


def test_run_summary_infinite():
    result = DispersionResult(math.inf, Assignment((1, 2)), 1, ResultVariant.HEAP_ONLY)
    summary = RunSummary.from_result(
        result, points=line_points(0, 1), c1=1, c2=1, wall_clock_ms=0.1, peak_mem_bytes=4096
    )
    assert summary.dispersion == "inf"
