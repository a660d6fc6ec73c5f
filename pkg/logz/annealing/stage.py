"""One annealing stage: the multilevel estimate of R_i = E_{rho_i} h_i."""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from logz.core.config import Settings, get_settings
from logz.core.exceptions import NumericalFailureException
from logz.core.rng import RngStream
from logz.mlmc import mlmc_estimate, plan_levels
from logz.models.plan import LevelPlan, MlmcEstimate
from logz.models.schedule import ErrorBudget, TruncatedRatio
from logz.potentials.base import QueryCounter, TargetPotential
from logz.samplers.base import LangevinSampler
from logz.utils.helpers import round_up_to_multiple, stable_mean

logger = logging.getLogger(__name__)

PILOT_ROLE = 1
MLMC_ROLE = 2


@dataclass
class StageEstimate:
    """Ratio estimate with the plan and the scale used to convert relative budgets."""
    R_hat: float
    estimate: MlmcEstimate
    plan: LevelPlan
    scale: float
    pilot_queries: int = 0

    @property
    def log_ratio(self) -> float:
        return math.log(self.R_hat)


def pilot_scale(
    stage: TargetPotential,
    ratio: TruncatedRatio,
    sampler: LangevinSampler,
    eta: float,
    rng: RngStream,
    accuracy: float,
    chains: int,
) -> Tuple[float, int]:
    """
    Mean of h_i over a few single chains, the scale of R_i, and its gradient queries.

    The pilot uses the coarse step and the sampler's horizon for the given
    accuracy. It never enters the final estimate.
    """
    if chains < 1:
        return 1.0, 0
    T = round_up_to_multiple(sampler.mixing_time(stage, accuracy), eta)
    X = sampler.run(stage, np.tile(stage.minimizer, (chains, 1)), eta, T, rng).x
    scale = stable_mean(ratio(np.atleast_2d(X)))
    if not (math.isfinite(scale) and scale > 0):
        raise NumericalFailureException(f"Pilot mean of stage {ratio.stage} is {scale}")
    logger.debug(f"Stage {ratio.stage}: pilot scale {scale:.4e} from {chains} chains")
    return scale, chains * sampler.chain_cost(eta, T)


def estimate_stage_ratio(
    stage: TargetPotential,
    ratio: TruncatedRatio,
    budget: ErrorBudget,
    sampler: LangevinSampler,
    rng: RngStream,
    counter: Optional[QueryCounter] = None,
    settings: Optional[Settings] = None,
) -> StageEstimate:
    """
    Multilevel estimate of E_{rho_i} h_i.

    Budgets are relative to R_i. In 'budget' Lipschitz mode the bound L_h
    already refers to h_i/R_i, so the relative budgets are used directly. In
    'exact' mode the exact Lipschitz constant of h_i is absolute and the
    budgets are converted with a pilot estimate of R_i. The pilot draws
    from rng.child(1) and the estimator from rng.child(2).

    Args:
        stage: Potential of rho_i
        ratio: Truncated ratio h_i
        budget: Error budget of the run
        sampler: Langevin sampler
        rng: Stream of this stage
        counter: Query counter of the base potential
        settings: Settings

    Returns:
        StageEstimate
    """
    settings = settings or get_settings()
    eps_b = budget.eps_b
    eps_sigma = budget.eps_sigma
    eta_max = sampler.eta_max(stage)

    if settings.LIPSCHITZ_MODE == "exact":
        L_g = ratio.lipschitz
        pilot_model = sampler.variance_model(stage, max(L_g, 1.0), eps_b)
        eta_pilot = pilot_model.solve(1.0 / (4 * stage.mu), eta_max)
        scale, pilot_queries = pilot_scale(
            stage, ratio, sampler, eta_pilot, rng.child(PILOT_ROLE),
            math.sqrt(ratio.sigma_sq) / 8, settings.PILOT_SAMPLES,
        )
    else:
        L_g = ratio.L_h
        scale, pilot_queries = 1.0, 0
    eps_b_abs = eps_b * scale
    eps_sigma_abs = eps_sigma * scale

    model = sampler.variance_model(stage, L_g, eps_b_abs)
    plan = plan_levels(
        model,
        L_g,
        1.0 / stage.mu,
        eps_b_abs,
        eps_sigma_abs,
        eta_max,
        lambda e: sampler.mixing_time(stage, e),
        cf=settings.CF,
        grad_cost_per_step=sampler.grad_cost_per_step,
        max_levels=settings.MAX_LEVELS,
        max_samples=settings.MAX_SAMPLES_PER_LEVEL,
        min_samples=settings.MIN_SAMPLES_PER_LEVEL,
    )
    logger.debug(f"Stage {ratio.stage}: eta0={plan.eta0:.3e} k={plan.k} Ns={plan.Ns} T={plan.T:.3f}")

    x0 = stage.minimizer

    def single_runner(n, eta, T, gen):
        return sampler.run(stage, np.tile(x0, (n, 1)), eta, T, gen).x

    def coupled_runner(n, eta, T, gen):
        return sampler.run_coupled(stage, np.tile(x0, (n, 1)), eta, T, gen)

    estimate = mlmc_estimate(
        coupled_runner,
        single_runner,
        ratio,
        plan,
        rng.child(MLMC_ROLE),
        counter=counter,
        threads=settings.THREADS,
        block_size=settings.BLOCK_SIZE,
    )
    R_hat = estimate.r_hat
    if not (math.isfinite(R_hat) and R_hat > 0):
        raise NumericalFailureException(f"Stage {ratio.stage} ratio estimate is {R_hat}")
    return StageEstimate(R_hat=R_hat, estimate=estimate, plan=plan, scale=scale, pilot_queries=pilot_queries)
