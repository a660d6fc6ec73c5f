"""Simulation of products of independent estimates with bounded relative variance."""
import logging
import math

import numpy as np
from pydantic import BaseModel
from scipy import stats

from logz.core.exceptions import ValidationException
from logz.core.rng import RngLike, as_generator

logger = logging.getLogger(__name__)


class ProductDeviation(BaseModel):
    """Observed frequency of |prod Y_i / prod E Y_i - 1| >= eps/2 against 5 eta M / eps^2."""
    M: int
    eta: float
    eps: float
    trials: int
    frequency: float
    bound: float
    upper_limit: float


def simulate_product_deviation(M: int, eta: float, eps: float, trials: int, rng: RngLike) -> ProductDeviation:
    """
    Lognormal Y_i with mean 1 and E Y_i^2 = 1 + eta, multiplied over M factors.

    upper_limit is the one-sided 95% Clopper-Pearson limit of the deviation
    probability.
    """
    if M < 1 or trials < 1:
        raise ValidationException("M and trials must be >= 1")
    if not (eta > 0 and eps > 0):
        raise ValidationException("eta and eps must be positive")
    if eta * M > 0.2:
        logger.warning(f"eta*M = {eta * M:.3g} exceeds 1/5; the bound does not apply")

    gen = as_generator(rng)
    s2 = math.log1p(eta)
    logs = gen.normal(-0.5 * s2, math.sqrt(s2), size=(trials, M))
    products = np.exp(np.sum(logs, axis=1))
    hits = int(np.count_nonzero(np.abs(products - 1.0) >= eps / 2))
    upper = 1.0 if hits == trials else float(stats.beta.ppf(0.95, hits + 1, trials - hits))
    return ProductDeviation(
        M=M,
        eta=eta,
        eps=eps,
        trials=trials,
        frequency=hits / trials,
        bound=5 * eta * M / eps ** 2,
        upper_limit=upper,
    )
