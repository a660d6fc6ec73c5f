"""Unit tests for report and table output."""
import csv
import json
import math

import pytest

from logz.core.exceptions import ConfigException
from logz.models import RunConfig, RunReport, StageRecord
from logz.services.report_service import (
    BENCH_COLUMNS,
    STAGE_COLUMNS,
    BenchCsvWriter,
    ReportService,
    bench_row,
    failed_row,
    read_json_config,
)
from tests.conftest import write_json


def _report() -> RunReport:
    report = RunReport(
        method="mlmc-uld", d=2, mu=1.0, L=1.0, eps=0.3, seed=4, M=2, nominal_M=5,
        alpha=0.1, sigma1_sq=0.05, log_z1_hat=-1.0, log_z_exact=0.5,
        grad_queries=120, predicted_grad_queries=120, budget_capped=True,
    )
    report.stages = [
        StageRecord(stage=1, sigma_sq=0.05, sigma_next_sq=0.1, log_ratio=1.0, ratio=math.e, seconds=0.25),
        StageRecord(stage=2, sigma_sq=0.1, log_ratio=0.5, ratio=math.exp(0.5), seconds=0.5),
    ]
    report.wall_time_seconds = 0.75
    return report.finalize()


@pytest.mark.unit
def test_write_report_sorted_and_stripped(tmp_path):
    """Test the JSON report is sorted, newline-terminated and free of timings."""
    path = tmp_path / "out" / "report.json"
    ReportService().write_report(_report(), str(path), strip_timing=True)
    text = path.read_text(encoding="utf-8")
    assert text.endswith("}\n")
    payload = json.loads(text)
    assert list(payload) == sorted(payload)
    assert payload["wall_time_seconds"] is None
    assert all(stage["seconds"] is None for stage in payload["stages"])
    assert payload["log_z_hat"] == pytest.approx(0.5)


@pytest.mark.unit
def test_write_report_is_byte_stable(tmp_path):
    """Test two writes of the same report are byte-identical."""
    service = ReportService()
    first = service.write_report(_report(), str(tmp_path / "a.json"), strip_timing=True)
    second = service.write_report(_report(), str(tmp_path / "b.json"), strip_timing=True)
    with open(first, "rb") as a, open(second, "rb") as b:
        assert a.read() == b.read()


@pytest.mark.unit
def test_load_report(tmp_path):
    """Test a written report loads back with its stages."""
    service = ReportService()
    path = service.write_report(_report(), str(tmp_path / "report.json"))
    loaded = service.load_report(path)
    assert loaded.recompute_log_z() == pytest.approx(0.5)
    assert loaded.wall_time_seconds == 0.75


@pytest.mark.unit
def test_stage_csv(tmp_path):
    """Test one row per stage with exact float text and an empty last-stage sigma."""
    path = ReportService().write_stage_csv(_report(), str(tmp_path / "stages.csv"), strip_timing=True)
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == STAGE_COLUMNS
    assert len(rows) == 3
    assert rows[1][STAGE_COLUMNS.index("sigma_sq")] == "0.050000000000000003"
    assert rows[2][STAGE_COLUMNS.index("sigma_next_sq")] == ""
    assert rows[1][STAGE_COLUMNS.index("seconds")] == ""


@pytest.mark.unit
def test_trace_csv(tmp_path):
    """Test trace rows are written in order."""
    path = ReportService().write_trace_csv(["t", "x_1"], [(0.5, 1.0), (1.0, -2.0)], str(tmp_path / "trace.csv"))
    with open(path, newline="") as handle:
        assert list(csv.reader(handle)) == [["t", "x_1"], ["0.5", "1"], ["1", "-2"]]


@pytest.mark.unit
def test_bench_writer_appends_header_once(tmp_path):
    """Test reopening the bench table appends rows without a second header."""
    path = str(tmp_path / "bench.csv")
    with BenchCsvWriter(path) as writer:
        writer.write_row(bench_row(_report(), 1.0, strip_timing=True))
    with BenchCsvWriter(path) as writer:
        writer.write_row(failed_row("mala", 3, 2.0, 0.1, 9, None))
    with open(path, newline="") as handle:
        rows = list(csv.DictReader(handle))
    assert len(rows) == 2
    assert list(rows[0]) == BENCH_COLUMNS
    assert rows[0]["status"] == "complete"
    assert rows[0]["budget_capped"] == "true"
    assert rows[0]["seconds"] == ""
    assert rows[1]["status"] == "failed"
    assert rows[1]["queries"] == ""


@pytest.mark.unit
def test_failed_row_keeps_partial_counts():
    """Test a partial report contributes its query count to a failed row."""
    row = failed_row("mlmc-uld", 2, 1.0, 0.3, 4, _report())
    assert row["status"] == "failed"
    assert row["queries"] == 120


@pytest.mark.unit
def test_read_json_config_syntax_error(tmp_path):
    """Test syntax errors report line and column."""
    path = tmp_path / "bad.json"
    path.write_text('{\n  "eps": 0.3,\n  oops\n}\n', encoding="utf-8")
    with pytest.raises(ConfigException, match=r"bad\.json:3:3"):
        read_json_config(str(path), RunConfig)


@pytest.mark.unit
def test_read_json_config_schema_error(tmp_path):
    """Test schema errors report the field path."""
    path = write_json(tmp_path / "run.json", {"target": {"name": "gaussian", "d": 0}, "eps": 0.3})
    with pytest.raises(ConfigException, match=r"target\.d"):
        read_json_config(path, RunConfig)


@pytest.mark.unit
def test_read_json_config_missing_file(tmp_path):
    """Test unreadable paths become config errors."""
    with pytest.raises(ConfigException):
        read_json_config(str(tmp_path / "missing.json"), RunConfig)
