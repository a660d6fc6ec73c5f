"""Annealing pipeline - orchestrates ladder, radii and per-stage MLMC."""
import logging
import math
import time
from typing import Any, Dict, List, Optional

from logz.annealing.budget import combine_error_check
from logz.annealing.schedule import build_schedule, log_z1, z1_log_bounds
from logz.annealing.stage import estimate_stage_ratio
from logz.annealing.truncation import estimate_radius, g_tail_bound, make_truncated_ratio
from logz.core.config import Settings, get_settings
from logz.core.exceptions import LogZException, StageFailureException, ValidationException
from logz.core.rng import RngStream
from logz.mlmc import predicted_queries
from logz.models.report import RunReport, StageRecord, safe_exp
from logz.models.schedule import AnnealSchedule, ErrorBudget
from logz.oracles.concentration import mode_mean_bound
from logz.potentials.base import CountingPotential, TargetPotential, wrap_counting
from logz.potentials.stage import make_annealed_stage
from logz.samplers import get_sampler
from logz.utils.helpers import norm_rows

logger = logging.getLogger(__name__)


class AnnealingPipeline:
    """Estimate Z = Z_1 prod_i R_i with a coupled Langevin sampler per stage."""

    RADIUS_ROLE = 0
    CONCENTRATION_SLACK = 0.25

    def __init__(self, sampler_family: str = "uld", settings: Optional[Settings] = None):
        """Initialize pipeline with a sampler family and settings."""
        self.settings = settings or get_settings()
        self.sampler = get_sampler(sampler_family, self.settings)
        self.method = f"mlmc-{self.sampler.family}"
        self._caps = set()

    def build_schedule(self, base: TargetPotential, eps: float) -> AnnealSchedule:
        return build_schedule(base.d, base.mu, base.L, eps, self.settings.MAX_STAGES)

    def _new_report(self, base: TargetPotential, eps: float, rng: RngStream, schedule: AnnealSchedule) -> RunReport:
        caps_hit = ["stages"] if schedule.capped else []
        return RunReport(
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
            caps_hit=caps_hit,
            settings=self.settings.model_dump(),
        )

    def run_stage(
        self,
        base: CountingPotential,
        schedule: AnnealSchedule,
        budget: ErrorBudget,
        i: int,
        eps: float,
        rng: RngStream,
    ) -> StageRecord:
        """Radius, truncated ratio and multilevel estimate of one stage."""
        started = time.perf_counter()
        values_before, grads_before = base.counter.snapshot()

        nxt = schedule.next_sigma_sq(i)
        stage_next = make_annealed_stage(base, math.inf if nxt is None else nxt)
        r_hat, r_plus, radius_info = estimate_radius(
            stage_next, schedule, i, self.sampler, rng.child(i, self.RADIUS_ROLE),
            eps, base.mu, self.settings,
        )
        ratio = make_truncated_ratio(schedule, i, r_plus, base.mu)

        stage = make_annealed_stage(base, schedule.sigma_sq(i))
        result = estimate_stage_ratio(
            stage, ratio, budget, self.sampler, rng.child(i),
            counter=base.counter, settings=self.settings,
        )

        truncation = g_tail_bound(schedule, i, r_plus, r_hat, base.mu)
        offset = float(norm_rows(stage_next.minimizer[None, :])[0])
        concentration_ok = r_hat <= offset + mode_mean_bound(base.d, stage_next.mu) + self.CONCENTRATION_SLACK
        values_after, grads_after = base.counter.snapshot()

        self._note_caps(radius_info, result.plan.capped)
        record = StageRecord(
            stage=i,
            sigma_sq=schedule.sigma_sq(i),
            sigma_next_sq=nxt,
            r_hat=r_hat,
            r_plus=r_plus,
            log_ratio=result.log_ratio,
            ratio=result.R_hat,
            ratio_variance=result.estimate.estimator_variance,
            bias_bound=(budget.eps_b + truncation) * result.R_hat,
            truncation_bound=truncation,
            plan=result.estimate.report_block(result.plan),
            draws=radius_info["S"],
            predicted_queries=radius_info["queries"] + result.pilot_queries + predicted_queries(result.plan),
            grad_queries=grads_after - grads_before,
            value_queries=values_after - values_before,
            concentration_ok=concentration_ok,
            seconds=time.perf_counter() - started,
        )
        logger.info(
            f"Stage {i}/{schedule.M}: R_hat={result.R_hat:.6g} r_hat={r_hat:.4f} "
            f"levels={result.plan.k + 1} queries={record.grad_queries}"
        )
        return record

    def _note_caps(self, radius_info: Dict[str, Any], plan_capped: bool) -> None:
        if radius_info["samples_capped"]:
            self._caps.add("radius_samples")
        if radius_info["steps_capped"]:
            self._caps.add("radius_steps")
        if plan_capped:
            self._caps.add("mlmc_plan")

    def run(
        self,
        base: TargetPotential,
        eps: float,
        rng: RngStream,
        config: Optional[Dict[str, Any]] = None,
    ) -> RunReport:
        """
        Run the full estimator.

        Args:
            base: Base potential (wrapped with a query counter unless it already has one)
            eps: Target relative error in (0, 1/2]
            rng: Root stream; stage i uses rng.child(i, role, ...)
            config: Run configuration echoed into the report

        Returns:
            RunReport with the estimate and its audit trail

        Raises:
            StageFailureException: When a stage fails; carries the partial report
        """
        if not 0 < eps <= 0.5:
            raise ValidationException(f"eps must be in (0, 0.5], got {eps}")
        started = time.perf_counter()
        if not isinstance(base, CountingPotential):
            base = wrap_counting(base)

        schedule = self.build_schedule(base, eps)
        budget = ErrorBudget(eps=eps, M=schedule.M)
        report = self._new_report(base, eps, rng, schedule)
        report.config = config or {}
        self._caps = set()

        logger.info(
            f"Starting {self.method} on {base.name} (d={base.d}, kappa={base.kappa:.3g}) "
            f"with eps={eps}, M={schedule.M}"
        )

        stages: List[StageRecord] = []
        for i in range(1, schedule.M + 1):
            try:
                stages.append(self.run_stage(base, schedule, budget, i, eps, rng))
            except LogZException as e:
                logger.error(f"Stage {i} failed: {e.message}", exc_info=True)
                report.stages = stages
                report.status = "failed"
                report.failed_stage = i
                report.error = e.message
                self._close(report, base, started)
                raise StageFailureException(i, e, report) from e

        report.stages = stages
        report.predicted_grad_queries = sum(s.predicted_queries for s in stages)
        report.certificate = combine_error_check(
            z1_log_bounds(schedule, base.d, base.mu, base.L),
            [s.bias_bound for s in stages],
            [s.ratio_variance for s in stages],
            budget.eps_parts,
            [s.ratio for s in stages],
        )
        report.finalize()
        self._close(report, base, started)
        logger.info(f"Finished {self.method}: log Z_hat={report.log_z_hat:.6f} in {report.wall_time_seconds:.2f}s")
        return report

    def _close(self, report: RunReport, base: CountingPotential, started: float) -> None:
        report.caps_hit = sorted(set(report.caps_hit) | self._caps)
        report.budget_capped = bool(report.caps_hit)
        report.z1_hat = safe_exp(report.log_z1_hat)
        report.value_queries, report.grad_queries = base.counter.snapshot()
        report.wall_time_seconds = time.perf_counter() - started


def run_pipeline(
    base: TargetPotential,
    eps: float,
    sampler_family: str,
    rng: RngStream,
    settings: Optional[Settings] = None,
    config: Optional[Dict[str, Any]] = None,
) -> RunReport:
    """Functional entry point for AnnealingPipeline."""
    return AnnealingPipeline(sampler_family, settings).run(base, eps, rng, config)
