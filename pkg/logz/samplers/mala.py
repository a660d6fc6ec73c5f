"""Half-lazy Metropolis-adjusted Langevin algorithm."""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from logz.core.config import Settings, get_settings
from logz.core.exceptions import ValidationException
from logz.core.rng import RngLike, as_generator
from logz.potentials.base import TargetPotential
from logz.samplers.base import check_dimension, checked_grad

logger = logging.getLogger(__name__)


@dataclass
class MalaResult:
    """Final positions and per-chain acceptance bookkeeping."""
    x: np.ndarray
    accepted: np.ndarray
    rejected_nonfinite: np.ndarray
    iterations: int = 0
    trace: Optional[List[np.ndarray]] = field(default=None)

    @property
    def acceptance_rate(self) -> float:
        """Accepted moves per iteration, held iterations included."""
        if self.iterations == 0:
            return 0.0
        return float(np.mean(self.accepted)) / self.iterations


def mala_log_acceptance(x, z, f_x, grad_x, f_z, grad_z, h: float) -> np.ndarray:
    """
    log of the Metropolis-Hastings ratio for a Langevin proposal x -> z.

    The proposal density is q(z | x) ~ exp(-||z - x + h grad f(x)||^2 / (4h)).
    """
    forward = z - x + h * grad_x
    backward = x - z + h * grad_z
    log_q_forward = np.sum(forward * forward, axis=-1) / (4 * h)
    log_q_backward = np.sum(backward * backward, axis=-1) / (4 * h)
    return (-f_z - log_q_backward) - (-f_x - log_q_forward)


def mala_chain(
    x0,
    stage: TargetPotential,
    h: float,
    n: int,
    rng: RngLike,
    record_trace: bool = False,
    on_step: Optional[Callable[[int, np.ndarray], None]] = None,
) -> MalaResult:
    """
    Run n half-lazy MALA iterations from x0 for every chain row.

    Per iteration and for all chains: a fair hold coin, a standard normal
    proposal block and a uniform acceptance draw, in that order. Only
    moving chains are evaluated (one value and one gradient per proposal);
    the current point's value and gradient are cached. A non-finite value
    at the proposal is rejected and counted.
    """
    if not h > 0:
        raise ValidationException(f"Step size must be positive, got {h}")
    if n < 0:
        raise ValidationException(f"Iteration count must be >= 0, got {n}")

    gen = as_generator(rng)
    single = np.ndim(x0) == 1
    x = np.atleast_2d(np.array(x0, dtype=float))
    check_dimension(stage, x)
    chains = x.shape[0]

    f_x = np.asarray(stage.value(x), dtype=float)
    grad_x = checked_grad(stage, x)
    accepted = np.zeros(chains, dtype=np.int64)
    rejected = np.zeros(chains, dtype=np.int64)
    trace = [x.copy()] if record_trace else None
    scale = math.sqrt(2 * h)

    for it in range(n):
        hold = gen.random(chains) < 0.5
        noise = gen.standard_normal(x.shape)
        log_u = np.log1p(-gen.random(chains))

        active = np.flatnonzero(~hold)
        if active.size:
            xa = x[active]
            z = xa - h * grad_x[active] + scale * noise[active]
            f_z = np.asarray(stage.value(z), dtype=float)
            grad_z = stage.grad(z)

            finite = np.isfinite(f_z) & np.all(np.isfinite(grad_z), axis=1)
            log_acc = np.full(active.size, -np.inf)
            if np.any(finite):
                log_acc[finite] = mala_log_acceptance(
                    xa[finite], z[finite], f_x[active][finite], grad_x[active][finite],
                    f_z[finite], grad_z[finite], h,
                )
            take = finite & (log_u[active] < log_acc)
            rejected[active[~finite]] += 1

            rows = active[take]
            x[rows] = z[take]
            f_x[rows] = f_z[take]
            grad_x[rows] = grad_z[take]
            accepted[rows] += 1

        if record_trace:
            trace.append(x.copy())
        if on_step is not None:
            on_step(it + 1, x[0] if single else x)

    return MalaResult(
        x=x[0] if single else x,
        accepted=accepted,
        rejected_nonfinite=rejected,
        iterations=n,
        trace=trace,
    )


def mala_step_size(stage: TargetPotential, c: float) -> float:
    """h = c / (L d max(1, sqrt(kappa/d)))."""
    d, L, kappa = stage.d, stage.L, stage.kappa
    return c / (L * d * max(1.0, math.sqrt(kappa / d)))


def mala_chain_length(stage: TargetPotential, delta: float, C: float) -> int:
    """n = ceil(C d kappa log(d/delta) max(1, sqrt(kappa/d))), log clamped at 1."""
    if not 0 < delta < 1:
        raise ValidationException(f"delta must be in (0, 1), got {delta}")
    d, kappa = stage.d, stage.kappa
    log_term = max(1.0, math.log(d / delta))
    return int(math.ceil(C * d * kappa * log_term * max(1.0, math.sqrt(kappa / d))))


def default_mala_params(
    stage: TargetPotential,
    delta: float,
    c: Optional[float] = None,
    C: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> Tuple[float, int]:
    """(h, n) reaching total variation delta from a N(x*, I/L) start."""
    settings = settings or get_settings()
    c = settings.MALA_STEP_PREFACTOR if c is None else c
    C = settings.MALA_CHAIN_CONSTANT if C is None else C
    return mala_step_size(stage, c), mala_chain_length(stage, delta, C)


def warm_start(stage: TargetPotential, chains: int, rng: RngLike) -> np.ndarray:
    """Draws from N(x*, I/L_stage)."""
    gen = as_generator(rng)
    return stage.minimizer + gen.standard_normal((chains, stage.d)) / math.sqrt(stage.L)
