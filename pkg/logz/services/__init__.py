"""Services module."""
from logz.services.report_service import (
    ReportService,
    BenchCsvWriter,
    bench_row,
    failed_row,
    read_json_config,
)

__all__ = ["ReportService", "BenchCsvWriter", "bench_row", "failed_row", "read_json_config"]
