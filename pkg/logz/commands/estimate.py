"""estimate: one normalizing-constant run from a JSON config."""
import argparse
import logging
import math
import os
from typing import Optional

from logz.core.config import Settings
from logz.core.dependencies import get_estimator, get_run_seed, get_run_settings
from logz.core.exceptions import AcceptanceCheckException, StageFailureException
from logz.core.rng import RngStream
from logz.models.config import RunConfig
from logz.models.report import RunReport
from logz.oracles.quadrature import MAX_DIMENSION, trapezoid_Z
from logz.potentials.base import TargetPotential
from logz.potentials.factory import build_target
from logz.services.report_service import ReportService, read_json_config

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("estimate", help="Estimate log Z for one run config")
    parser.add_argument("--config", required=True, help="Run config JSON")
    parser.add_argument("--output-dir", default=".", help="Directory for relative output paths")
    parser.add_argument("--strip-timing", action="store_true", help="Omit wall-clock fields")
    parser.add_argument("--check", action="store_true", help="Compare against an oracle (exit 4 on a miss)")
    parser.set_defaults(handler=handle)


def reference_log_z(base: TargetPotential, eps: float, settings: Settings) -> Optional[float]:
    """Closed-form log Z, else trapezoid quadrature for d <= 3, else None."""
    exact = base.log_z_exact()
    if exact is not None:
        return exact
    if base.d <= MAX_DIMENSION:
        result = trapezoid_Z(base, min(eps, 0.5), max_points=settings.QUADRATURE_MAX_POINTS)
        if not result.converged:
            logger.warning(f"Quadrature reference unconverged at {result.points_per_axis} points per axis")
        return result.log_z
    return None


def check_report(report: RunReport, reference: Optional[float], tolerance: float) -> float:
    """
    Relative error of the report against the reference.

    Raises:
        AcceptanceCheckException: Without a reference, or when the error exceeds the tolerance
    """
    if reference is None:
        raise AcceptanceCheckException(f"No oracle for a d={report.d} target; --check needs d <= {MAX_DIMENSION}")
    rel_error = abs(math.expm1(report.log_z_hat - reference))
    if rel_error > tolerance:
        raise AcceptanceCheckException(f"Relative error {rel_error:.6g} exceeds tolerance {tolerance:.6g}")
    logger.info(f"Check passed: relative error {rel_error:.6g} <= {tolerance:.6g}")
    return rel_error


def write_outputs(service: ReportService, report: RunReport, config: RunConfig, output_dir: str, strip_timing: bool) -> None:
    service.write_report(report, os.path.join(output_dir, config.output.report), strip_timing)
    service.write_stage_csv(report, os.path.join(output_dir, config.output.stages_csv), strip_timing)


def run_estimate(
    config: RunConfig,
    output_dir: str = ".",
    strip_timing: bool = False,
    check: bool = False,
    threads: Optional[int] = None,
) -> RunReport:
    """
    Run one config and write its report and stage table.

    A failed stage still writes the partial report before the exception
    propagates.

    Raises:
        StageFailureException: When a stage fails
        AcceptanceCheckException: With check=True, when the estimate misses the oracle
    """
    settings = get_run_settings(config.overrides(), threads)
    seed = get_run_seed(config.seed, settings)
    config = config.model_copy(update={"seed": seed})
    base = build_target(config.target)
    estimator = get_estimator(config.method, settings)
    service = ReportService()
    echo = config.model_dump(mode="json")

    logger.info(f"Estimating {config.target.name} with {config.method}, eps={config.eps}, seed={seed}")
    try:
        report = estimator.run(base, config.eps, RngStream(seed), echo)
    except StageFailureException as e:
        if e.partial_report is not None:
            write_outputs(service, e.partial_report, config, output_dir, strip_timing)
        raise

    if check:
        reference = reference_log_z(base, config.eps, settings)
        if reference is not None and report.log_z_exact is None:
            report.log_z_exact = reference
            report.finalize()
        try:
            check_report(report, reference, config.check_tolerance or config.eps)
        finally:
            write_outputs(service, report, config, output_dir, strip_timing)
        return report

    write_outputs(service, report, config, output_dir, strip_timing)
    return report


def handle(args: argparse.Namespace) -> int:
    config = read_json_config(args.config, RunConfig)
    report = run_estimate(
        config,
        output_dir=args.output_dir,
        strip_timing=args.strip_timing,
        check=args.check,
        threads=args.threads,
    )
    print(f"log_z_hat={report.log_z_hat:.10g} grad_queries={report.grad_queries} status={report.status}")
    return 0
