"""Truncation radii and truncated stage ratios."""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from logz.core.config import Settings, get_settings
from logz.core.exceptions import NumericalFailureException
from logz.core.rng import RngStream
from logz.models.schedule import AnnealSchedule, TruncatedRatio
from logz.potentials.base import TargetPotential
from logz.samplers.base import LangevinSampler
from logz.utils.debug import profile_function
from logz.utils.helpers import norm_rows, num_steps, stable_mean
from logz.utils.parallel import ordered_map, split_blocks

logger = logging.getLogger(__name__)

RADIUS_SAMPLES_PER_STAGE = 2 ** 10
RADIUS_SLACK = 0.25


def radius_accuracy(schedule: AnnealSchedule, i: int, mu: float) -> float:
    """W2 accuracy of the radius sampler: sigma_i/8 before the last stage, 1/(8 sqrt(mu)) at it."""
    if schedule.is_last(i):
        return 1.0 / (8 * math.sqrt(mu))
    return math.sqrt(schedule.sigma_sq(i)) / 8


def radius_sample_count(schedule: AnnealSchedule, cap: Optional[int] = None) -> Tuple[int, bool]:
    """S = 2^10 M, with an optional cap; returns (S, capped)."""
    S = RADIUS_SAMPLES_PER_STAGE * schedule.M
    if cap is not None and S > cap:
        return cap, True
    return S, False


def radius_margin(schedule: AnnealSchedule, i: int, eps: float, mu: float) -> float:
    """r_plus - r_hat."""
    log_term = math.log(8 / eps)
    if schedule.is_last(i):
        return math.sqrt(2 * log_term) / math.sqrt(mu) + RADIUS_SLACK
    return math.sqrt(schedule.sigma_sq(i)) * math.sqrt(2 * (1 + schedule.alpha) * log_term) + RADIUS_SLACK


@profile_function
def estimate_radius(
    stage_next: TargetPotential,
    schedule: AnnealSchedule,
    i: int,
    sampler: LangevinSampler,
    rng: RngStream,
    eps: float,
    mu: float,
    settings: Optional[Settings] = None,
) -> Tuple[float, float, dict]:
    """
    Mean norm of samples from rho_{i+1} and the truncation radius.

    Chains start at the minimizer of stage_next and run with the sampler's
    parameters for accuracy radius_accuracy(). Block b draws from
    rng.child(b).

    Args:
        stage_next: Potential of rho_{i+1} (the base potential when i = M)
        schedule: Annealing ladder
        i: Stage index in 1..M
        sampler: Langevin sampler
        rng: Radius stream of this stage
        eps: Total relative error
        mu: Strong convexity of the base potential
        settings: Settings (caps, threads, block size)

    Returns:
        (r_hat, r_plus, info) where info holds S, eta, T and the binding caps

    Raises:
        NumericalFailureException: On a non-finite sample norm
    """
    settings = settings or get_settings()
    S, samples_capped = radius_sample_count(schedule, settings.MAX_RADIUS_SAMPLES)
    eta, T = sampler.accuracy_params(stage_next, radius_accuracy(schedule, i, mu))

    steps_capped = False
    cap = settings.MAX_RADIUS_STEPS
    if cap is not None and num_steps(T, eta) > cap:
        eta = T / cap
        steps_capped = True

    x0 = stage_next.minimizer

    def run_block(item) -> np.ndarray:
        block, _, size = item
        state = sampler.run(stage_next, np.tile(x0, (size, 1)), eta, T, rng.child(block))
        return norm_rows(np.atleast_2d(state.x))

    blocks = split_blocks(S, settings.BLOCK_SIZE)
    norms = np.concatenate(ordered_map(run_block, blocks, threads=settings.THREADS))
    bad = np.flatnonzero(~np.isfinite(norms))
    if bad.size:
        raise NumericalFailureException(f"Non-finite sample norm at stage {i}, sample {int(bad[0])}")

    r_hat = stable_mean(norms)
    r_plus = r_hat + radius_margin(schedule, i, eps, mu)
    logger.debug(f"Stage {i}: r_hat={r_hat:.4f} r_plus={r_plus:.4f} from S={S} (eta={eta:.3e}, T={T:.3f})")
    info = {
        "S": S,
        "eta": eta,
        "T": T,
        "queries": S * sampler.chain_cost(eta, T),
        "samples_capped": samples_capped,
        "steps_capped": steps_capped,
    }
    return r_hat, r_plus, info


def lipschitz_budget(schedule: AnnealSchedule, i: int, mu: float) -> float:
    """Lipschitz budget of h_i/R_i: 112e/sigma_i before the last stage, 2e^2 sqrt(mu) at it."""
    if schedule.is_last(i):
        return 2 * math.e ** 2 * math.sqrt(mu)
    return 112 * math.e / math.sqrt(schedule.sigma_sq(i))


def make_truncated_ratio(schedule: AnnealSchedule, i: int, r_plus: float, mu: float) -> TruncatedRatio:
    """h_i = min(g_i, g_i at radius r_plus), with its Lipschitz budget."""
    return TruncatedRatio(
        stage=i,
        sigma_sq=schedule.sigma_sq(i),
        coefficient=schedule.g_coefficient(i),
        r_plus=r_plus,
        L_h=lipschitz_budget(schedule, i, mu),
        alpha_eff=schedule.alpha_eff(i),
    )


def g_tail_bound(schedule: AnnealSchedule, i: int, r_plus: float, r_bar: float, mu: float) -> float:
    """
    Relative truncation error bound exp(-(1/(sigma_i^2 (1+alpha)) + mu)(r_plus - r_bar)^2 / 2).

    The precision term vanishes at the last stage; r_plus <= r_bar gives the trivial bound 1.
    """
    if r_plus <= r_bar:
        return 1.0
    nxt = schedule.next_sigma_sq(i)
    precision = 0.0 if nxt is None else 1.0 / nxt
    return math.exp(-0.5 * (precision + mu) * (r_plus - r_bar) ** 2)
