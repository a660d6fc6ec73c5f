"""bench: sweep methods, dimensions, condition numbers, accuracies and seeds."""
import argparse
import itertools
import logging
from typing import Optional

from logz.core.dependencies import get_estimator, get_run_settings
from logz.core.exceptions import EXIT_NUMERICAL_FAILURE, LogZException, StageFailureException
from logz.core.rng import RngStream
from logz.models.config import BenchConfig, TargetSpec
from logz.potentials.factory import build_target
from logz.services.report_service import BenchCsvWriter, bench_row, failed_row, read_json_config

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("bench", help="Run a sweep and append one CSV row per run")
    parser.add_argument("--config", required=True, help="Bench config JSON")
    parser.add_argument("--output", default="bench.csv", help="Benchmark CSV (appended)")
    parser.add_argument("--strip-timing", action="store_true", help="Leave the seconds column empty")
    parser.set_defaults(handler=handle)


def run_bench(
    config: BenchConfig,
    output: str,
    strip_timing: bool = False,
    threads: Optional[int] = None,
) -> int:
    """
    Run every combination of the sweep, flushing each row as it finishes.

    Failed runs are recorded with status 'failed' and the sweep continues.

    Returns:
        Number of failed runs
    """
    settings = get_run_settings(config.overrides(), threads)
    grid = list(itertools.product(config.methods, config.dims, config.kappas, config.eps, config.seeds))
    logger.info(f"Bench sweep of {len(grid)} runs into {output}")
    failures = 0

    with BenchCsvWriter(output) as writer:
        for method, d, kappa, eps, seed in grid:
            spec = TargetSpec.for_sweep(d, kappa)
            echo = {"target": spec.model_dump(mode="json"), "method": method, "eps": eps, "seed": seed}
            try:
                base = build_target(spec)
                report = get_estimator(method, settings).run(base, eps, RngStream(seed), echo)
                writer.write_row(bench_row(report, kappa, strip_timing))
                logger.info(
                    f"{method} d={d} kappa={kappa} eps={eps} seed={seed}: "
                    f"rel_error={report.rel_error} queries={report.grad_queries}"
                )
            except StageFailureException as e:
                failures += 1
                logger.error(f"{method} d={d} kappa={kappa} eps={eps} seed={seed} failed: {e.message}")
                writer.write_row(failed_row(method, d, kappa, eps, seed, e.partial_report))
            except LogZException as e:
                failures += 1
                logger.error(f"{method} d={d} kappa={kappa} eps={eps} seed={seed} failed: {e.message}")
                writer.write_row(failed_row(method, d, kappa, eps, seed, None))

    return failures


def handle(args: argparse.Namespace) -> int:
    config = read_json_config(args.config, BenchConfig)
    failures = run_bench(config, args.output, args.strip_timing, args.threads)
    if failures:
        logger.warning(f"{failures} bench run(s) failed")
        return EXIT_NUMERICAL_FAILURE
    return 0
