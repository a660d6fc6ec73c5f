"""Report service for run outputs (JSON reports and CSV tables)."""
import csv
import json
import logging
import os
from typing import Any, Dict, Iterable, Optional, Sequence

from pydantic import ValidationError

from logz.core.exceptions import ConfigException
from logz.models.report import RunReport
from logz.utils.helpers import format_float

logger = logging.getLogger(__name__)

STAGE_COLUMNS = [
    "stage",
    "sigma_sq",
    "sigma_next_sq",
    "r_hat",
    "r_plus",
    "ratio",
    "log_ratio",
    "ratio_variance",
    "grad_queries",
    "value_queries",
    "seconds",
]

BENCH_COLUMNS = [
    "method",
    "d",
    "kappa",
    "eps",
    "seed",
    "status",
    "M",
    "log_z_hat",
    "log_z_exact",
    "rel_error",
    "queries",
    "predicted_queries",
    "value_queries",
    "budget_capped",
    "seconds",
]


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def read_json_config(path: str, model):
    """
    Load and validate a JSON config file.

    Raises:
        ConfigException: With line/column for syntax errors and field paths for schema errors
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as e:
        raise ConfigException(f"Cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigException(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    try:
        return model.model_validate(raw)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors()
        )
        raise ConfigException(f"Invalid config {path}: {problems}") from e


class ReportService:
    """Writes run reports and per-stage tables."""

    def write_report(self, report: RunReport, path: str, strip_timing: bool = False) -> str:
        """Write the JSON report; with strip_timing the output is byte-identical across reruns."""
        if strip_timing:
            report = report.strip_timing()
        _ensure_parent(path)
        payload = report.model_dump(mode="json")
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True, allow_nan=False)
            handle.write("\n")
        logger.info(f"Report written to {path}")
        return path

    def load_report(self, path: str) -> RunReport:
        with open(path, "r", encoding="utf-8") as handle:
            return RunReport.model_validate(json.load(handle))

    def write_stage_csv(self, report: RunReport, path: str, strip_timing: bool = False) -> str:
        """One row per stage: stage, sigma^2, r_hat, r_plus, R_hat, queries, seconds."""
        _ensure_parent(path)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(STAGE_COLUMNS)
            for stage in report.stages:
                row = stage.model_dump()
                if strip_timing:
                    row["seconds"] = None
                writer.writerow([_cell(row[column]) for column in STAGE_COLUMNS])
        logger.debug(f"Stage table written to {path}")
        return path

    def write_trace_csv(self, columns: Sequence[str], rows: Iterable[Sequence[float]], path: str) -> str:
        """Trace of a single chain, one row per step."""
        _ensure_parent(path)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(list(columns))
            count = 0
            for row in rows:
                writer.writerow([_cell(float(v)) for v in row])
                count += 1
        logger.info(f"Trace of {count} rows written to {path}")
        return path


class BenchCsvWriter:
    """Appends one benchmark row per finished run and flushes it immediately."""

    def __init__(self, path: str):
        """Open the table, writing the header when the file is new or empty."""
        self.path = path
        _ensure_parent(path)
        is_new = not os.path.exists(path) or os.path.getsize(path) == 0
        self._handle = open(path, "a", encoding="utf-8", newline="")
        self._writer = csv.writer(self._handle, lineterminator="\n")
        if is_new:
            self._writer.writerow(BENCH_COLUMNS)
            self._handle.flush()

    def write_row(self, row: Dict[str, Any]) -> None:
        self._writer.writerow([_cell(row.get(column)) for column in BENCH_COLUMNS])
        self._handle.flush()

    def close(self) -> None:
        self._handle.close()

    def __enter__(self) -> "BenchCsvWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def bench_row(report: RunReport, kappa: float, strip_timing: bool = False) -> Dict[str, Any]:
    """Benchmark table row of one run."""
    return {
        "method": report.method,
        "d": report.d,
        "kappa": float(kappa),
        "eps": report.eps,
        "seed": report.seed,
        "status": report.status,
        "M": report.M,
        "log_z_hat": report.log_z_hat,
        "log_z_exact": report.log_z_exact,
        "rel_error": report.rel_error,
        "queries": report.grad_queries,
        "predicted_queries": report.predicted_grad_queries,
        "value_queries": report.value_queries,
        "budget_capped": report.budget_capped,
        "seconds": None if strip_timing else report.wall_time_seconds,
    }


def failed_row(method: str, d: int, kappa: float, eps: float, seed: int, partial: Optional[RunReport]) -> Dict[str, Any]:
    """Row for a run that raised; partial reports keep their query counts."""
    if partial is not None:
        row = bench_row(partial, kappa, strip_timing=True)
        row["status"] = "failed"
        return row
    return {"method": method, "d": d, "kappa": float(kappa), "eps": eps, "seed": seed, "status": "failed"}
