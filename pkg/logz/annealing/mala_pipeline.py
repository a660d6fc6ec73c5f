"""Annealing baseline with independent MALA draws per stage."""
import logging
import math
import time
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from logz.annealing.schedule import build_mala_schedule, log_z1
from logz.core.config import Settings, get_settings
from logz.core.exceptions import (
    LogZException,
    NumericalFailureException,
    StageFailureException,
    ValidationException,
)
from logz.core.rng import RngStream
from logz.models.report import RunReport, StageRecord, safe_exp
from logz.models.schedule import AnnealSchedule
from logz.potentials.base import CountingPotential, TargetPotential, wrap_counting
from logz.potentials.stage import make_annealed_stage
from logz.samplers.mala import default_mala_params, mala_chain, warm_start
from logz.utils.helpers import ceil_tol, sample_variance, stable_mean
from logz.utils.parallel import ordered_map, split_blocks

logger = logging.getLogger(__name__)


def mala_draw_count(M: int, eps: float, cap: Optional[int] = None) -> Tuple[int, bool]:
    """K = ceil(1200 M / eps^2), with an optional cap; returns (K, capped)."""
    K = ceil_tol(1200 * M / eps ** 2)
    if cap is not None and K > cap:
        return cap, True
    return K, False


class MalaAnnealingPipeline:
    """Estimate Z = Z_1 prod_i E_{rho_i} g_i from K fresh MALA chains per stage."""

    method = "mala"

    def __init__(self, settings: Optional[Settings] = None):
        """Initialize pipeline with settings."""
        self.settings = settings or get_settings()
        self._caps = set()

    def stage_draws(
        self,
        stage: TargetPotential,
        K: int,
        h: float,
        n: int,
        rng: RngStream,
    ) -> Tuple[np.ndarray, float]:
        """
        Final points of K chains of n steps; block b starts and runs on rng.child(b).

        Returns:
            (points, acceptance rate)
        """

        def run_block(item):
            block, _, size = item
            gen = rng.child(block).generator()
            x0 = warm_start(stage, size, gen)
            result = mala_chain(x0, stage, h, n, gen)
            return result.x, float(np.sum(result.accepted))

        parts = ordered_map(run_block, split_blocks(K, self.settings.BLOCK_SIZE), threads=self.settings.THREADS)
        points = np.concatenate([p for p, _ in parts], axis=0)
        accepted = sum(a for _, a in parts)
        rate = accepted / (K * n) if n > 0 else 0.0
        return points, rate

    def run_stage(
        self,
        base: CountingPotential,
        schedule: AnnealSchedule,
        i: int,
        K: int,
        delta: float,
        rng: RngStream,
    ) -> StageRecord:
        """Average of the untruncated ratio g_i over K draws from rho_i."""
        started = time.perf_counter()
        values_before, grads_before = base.counter.snapshot()

        stage = make_annealed_stage(base, schedule.sigma_sq(i))
        h, n = default_mala_params(stage, delta, settings=self.settings)
        cap = self.settings.MAX_MALA_STEPS
        if cap is not None and n > cap:
            n = cap
            self._caps.add("mala_steps")

        points, rate = self.stage_draws(stage, K, h, n, rng.child(i))
        a = schedule.g_coefficient(i)
        values = np.exp(a * np.einsum("ij,ij->i", points, points))
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise NumericalFailureException(f"Non-finite ratio value at stage {i}, draw {int(bad[0])}")

        ratio = stable_mean(values)
        values_after, grads_after = base.counter.snapshot()
        logger.info(f"Stage {i}/{schedule.M}: g_hat={ratio:.6g} (h={h:.3e}, n={n}, acceptance={rate:.3f})")
        return StageRecord(
            stage=i,
            sigma_sq=schedule.sigma_sq(i),
            sigma_next_sq=schedule.next_sigma_sq(i),
            log_ratio=math.log(ratio),
            ratio=ratio,
            ratio_variance=sample_variance(values) / K,
            draws=K,
            grad_queries=grads_after - grads_before,
            value_queries=values_after - values_before,
            seconds=time.perf_counter() - started,
        )

    def run(
        self,
        base: TargetPotential,
        eps: float,
        rng: RngStream,
        config: Optional[Dict[str, Any]] = None,
    ) -> RunReport:
        """
        Run the MALA annealing baseline.

        Per stage, K = ceil(1200 M/eps^2) chains each start from N(x*, I/L_i)
        and run n steps with total-variation target delta = 1/(4MK).

        Raises:
            StageFailureException: When a stage fails; carries the partial report
        """
        if not 0 < eps <= 0.5:
            raise ValidationException(f"eps must be in (0, 0.5], got {eps}")
        started = time.perf_counter()
        if not isinstance(base, CountingPotential):
            base = wrap_counting(base)
        self._caps = set()

        schedule = build_mala_schedule(base.d, base.mu, base.L, eps, self.settings.MAX_STAGES)
        if schedule.capped:
            self._caps.add("stages")
        K, draws_capped = mala_draw_count(schedule.M, eps, self.settings.MAX_MALA_DRAWS)
        if draws_capped:
            self._caps.add("mala_draws")
        delta = 1.0 / (4 * schedule.M * K)

        report = RunReport(
            method=self.method,
            d=base.d,
            mu=base.mu,
            L=base.L,
            eps=eps,
            seed=rng.seed,
            M=schedule.M,
            nominal_M=schedule.nominal_M,
            alpha=schedule.alpha,
            sigma1_sq=schedule.sigma1_sq,
            sigma_max_sq=schedule.sigma_max_sq,
            log_z1_hat=log_z1(schedule, base.d),
            log_z_exact=base.log_z_exact(),
            config=config or {},
            settings=self.settings.model_dump(),
        )
        logger.info(f"Starting mala on {base.name} (d={base.d}) with eps={eps}, M={schedule.M}, K={K}")

        stages: List[StageRecord] = []
        for i in range(1, schedule.M + 1):
            try:
                stages.append(self.run_stage(base, schedule, i, K, delta, rng))
            except LogZException as e:
                logger.error(f"Stage {i} failed: {e.message}", exc_info=True)
                report.stages = stages
                report.status = "failed"
                report.failed_stage = i
                report.error = e.message
                self._close(report, base, started)
                raise StageFailureException(i, e, report) from e

        report.stages = stages
        report.finalize()
        self._close(report, base, started)
        logger.info(f"Finished mala: log Z_hat={report.log_z_hat:.6f} in {report.wall_time_seconds:.2f}s")
        return report

    def _close(self, report: RunReport, base: CountingPotential, started: float) -> None:
        report.caps_hit = sorted(self._caps)
        report.budget_capped = bool(report.caps_hit)
        report.z1_hat = safe_exp(report.log_z1_hat)
        report.value_queries, report.grad_queries = base.counter.snapshot()
        report.wall_time_seconds = time.perf_counter() - started


def run_mala_pipeline(
    base: TargetPotential,
    eps: float,
    rng: RngStream,
    settings: Optional[Settings] = None,
    config: Optional[Dict[str, Any]] = None,
) -> RunReport:
    """Functional entry point for MalaAnnealingPipeline."""
    return MalaAnnealingPipeline(settings).run(base, eps, rng, config)
