"""Telescoping multilevel Monte Carlo estimator."""
import logging
from typing import Callable, List, Optional, Tuple

import numpy as np

from logz.core.config import get_settings
from logz.core.exceptions import MlmcLevelFailure
from logz.core.rng import RngStream
from logz.models.plan import LevelPlan, LevelSummary, MlmcEstimate
from logz.potentials.base import QueryCounter
from logz.mlmc.planner import predicted_queries
from logz.samplers.base import CoupledPair
from logz.utils.debug import profile_function
from logz.utils.helpers import sample_variance, stable_mean
from logz.utils.parallel import ordered_map, split_blocks

logger = logging.getLogger(__name__)

# (chains, eta, T, generator) -> final positions (chains, d)
SingleRunner = Callable[[int, float, float, np.random.Generator], np.ndarray]
# (chains, coarse eta, T, generator) -> CoupledPair
CoupledRunner = Callable[[int, float, float, np.random.Generator], CoupledPair]
TestFunction = Callable[[np.ndarray], np.ndarray]


def level_values(
    level: int,
    size: int,
    plan: LevelPlan,
    coupled_runner: CoupledRunner,
    single_runner: SingleRunner,
    g: TestFunction,
    gen: np.random.Generator,
) -> np.ndarray:
    """g(X^{eta_0}) at level 0, g(fine) - g(coarse) at coarse step eta_{level-1} above."""
    etas = plan.etas
    if level == 0:
        X = single_runner(size, etas[0], plan.T, gen)
        return np.asarray(g(np.atleast_2d(X)), dtype=float).reshape(size)
    pair = coupled_runner(size, etas[level - 1], plan.T, gen)
    fine = np.asarray(g(np.atleast_2d(pair.x_fine)), dtype=float).reshape(size)
    coarse = np.asarray(g(np.atleast_2d(pair.x_coarse)), dtype=float).reshape(size)
    return fine - coarse


@profile_function
def mlmc_estimate(
    coupled_runner: CoupledRunner,
    single_runner: SingleRunner,
    g: TestFunction,
    plan: LevelPlan,
    rng: RngStream,
    counter: Optional[QueryCounter] = None,
    threads: Optional[int] = None,
    block_size: Optional[int] = None,
) -> MlmcEstimate:
    """
    Evaluate the telescoping estimator on a plan.

    Level j draws its samples in blocks; block b of level j uses the stream
    rng.child(j, b), so the estimate does not depend on the thread count.
    Means are reduced level by level, then sample by sample.

    Args:
        coupled_runner: Runs coupled pairs at a coarse step
        single_runner: Runs single chains (level 0)
        g: Test function on rows
        plan: Level plan
        rng: Stream of this estimate
        counter: Counter of the potential being sampled; when given, queries
            are measured, otherwise they are the plan's exact prediction
        threads: Worker threads (settings.THREADS when omitted)
        block_size: Chains per block (settings.BLOCK_SIZE when omitted)

    Returns:
        MlmcEstimate

    Raises:
        MlmcLevelFailure: When g is non-finite on some sample
    """
    if block_size is None:
        block_size = get_settings().BLOCK_SIZE
    before = counter.snapshot()[1] if counter is not None else 0

    items: List[Tuple[int, int, int, int]] = []
    for level, n in enumerate(plan.Ns):
        for block, start, size in split_blocks(n, block_size):
            items.append((level, block, start, size))
    logger.debug(f"MLMC over {plan.k + 1} levels in {len(items)} blocks")

    def run_block(item: Tuple[int, int, int, int]) -> np.ndarray:
        level, block, start, size = item
        gen = rng.child(level, block).generator()
        values = level_values(level, size, plan, coupled_runner, single_runner, g, gen)
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise MlmcLevelFailure(level, start + int(bad[0]), float(values[bad[0]]))
        return values

    results = ordered_map(run_block, items, threads=threads)

    summaries = []
    r_hat = 0.0
    for level in range(plan.k + 1):
        values = np.concatenate([res for item, res in zip(items, results) if item[0] == level])
        mean = stable_mean(values)
        summaries.append(
            LevelSummary(level=level, n=int(values.size), mean=mean, variance=sample_variance(values))
        )
        r_hat += mean

    if counter is not None:
        queries = counter.snapshot()[1] - before
    else:
        queries = predicted_queries(plan)

    return MlmcEstimate(r_hat=r_hat, levels=summaries, queries=queries)
