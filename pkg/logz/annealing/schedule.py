"""Temperature ladders and the starting normalizer."""
import logging
import math
from typing import Optional, Tuple

from logz.core.exceptions import ValidationException
from logz.models.schedule import AnnealSchedule
from logz.utils.helpers import ceil_tol

logger = logging.getLogger(__name__)


def _check_inputs(d: int, mu: float, L: float, eps: float) -> None:
    if not 0 < eps <= 0.5:
        raise ValidationException(f"eps must be in (0, 0.5], got {eps}")
    if d < 1:
        raise ValidationException(f"Dimension must be >= 1, got {d}")
    if not (mu > 0 and L >= mu):
        raise ValidationException(f"Need 0 < mu <= L, got mu={mu}, L={L}")


def _geometric_ladder(
    sigma1_sq: float,
    alpha: float,
    M: int,
    sigma_max_sq: float,
    max_stages: Optional[int],
) -> AnnealSchedule:
    """Ladder sigma_1^2 (1 + alpha)^(i-1); a binding stage cap stretches alpha to keep the top."""
    nominal_M = M
    capped = False
    if max_stages is not None and M > max_stages:
        capped = True
        M = max_stages
        if M > 1:
            alpha = (sigma_max_sq / sigma1_sq) ** (1.0 / (M - 1)) - 1.0
        logger.info(f"Stage cap {max_stages} binds (nominal M={nominal_M}); alpha stretched to {alpha:.4g}")

    sigmas_sq = [sigma1_sq * (1 + alpha) ** i for i in range(M)]
    return AnnealSchedule(
        sigma1_sq=sigma1_sq,
        alpha=alpha,
        M=M,
        sigmas_sq=sigmas_sq,
        sigma_max_sq=sigma_max_sq,
        nominal_M=nominal_M,
        capped=capped,
    )


def build_schedule(d: int, mu: float, L: float, eps: float, max_stages: Optional[int] = None) -> AnnealSchedule:
    """
    Ladder of the multilevel annealing estimator.

    sigma_1^2 = eps/(8dL), alpha = min(log 2/(2 sqrt(d) log(8/eps)), 1/4),
    sigma_max^2 = 4 max(sqrt(d), sqrt(log(8/eps))) max(1, 1/sqrt(mu))/mu and
    M = ceil(log(sigma_max^2/sigma_1^2)/log(1+alpha)) + 1, or M = 1 when the
    ladder is already past sigma_max^2.

    Args:
        d: Dimension
        mu: Strong convexity of the base potential
        L: Smoothness of the base potential
        eps: Target relative error in (0, 1/2]
        max_stages: Optional desk-scale cap on M

    Returns:
        AnnealSchedule
    """
    _check_inputs(d, mu, L, eps)
    log_term = math.log(8 / eps)
    sigma1_sq = eps / (8 * d * L)
    alpha = min(math.log(2) / (2 * math.sqrt(d) * log_term), 0.25)
    sigma_max_sq = 4 * max(math.sqrt(d), math.sqrt(log_term)) * max(1.0, 1 / math.sqrt(mu)) / mu

    ratio = sigma_max_sq / sigma1_sq
    if ratio <= 1:
        M = 1
    else:
        M = ceil_tol(math.log(ratio) / math.log1p(alpha)) + 1

    schedule = _geometric_ladder(sigma1_sq, alpha, M, sigma_max_sq, max_stages)
    logger.debug(f"Schedule d={d} eps={eps}: sigma1^2={sigma1_sq:.4e} alpha={alpha:.4e} M={schedule.M}")
    return schedule


def build_mala_schedule(d: int, mu: float, L: float, eps: float, max_stages: Optional[int] = None) -> AnnealSchedule:
    """
    Ladder of the MALA annealing baseline.

    sigma_1^2 = eps/(2dL), alpha = 1/sqrt(d) and
    M = ceil(log(2 d^{3/2} kappa/eps)/log(1 + 1/sqrt(d))).
    """
    _check_inputs(d, mu, L, eps)
    kappa = L / mu
    sigma1_sq = eps / (2 * d * L)
    alpha = 1 / math.sqrt(d)
    argument = 2 * d ** 1.5 * kappa / eps
    M = max(1, ceil_tol(math.log(argument) / math.log1p(alpha)))
    sigma_top = sigma1_sq * (1 + alpha) ** (M - 1)
    return _geometric_ladder(sigma1_sq, alpha, M, sigma_top, max_stages)


def log_z1(schedule: AnnealSchedule, d: int) -> float:
    """log (2 pi sigma_1^2)^{d/2}."""
    return 0.5 * d * math.log(2 * math.pi * schedule.sigma1_sq)


def estimate_z1(schedule: AnnealSchedule, d: int) -> float:
    """
    (2 pi sigma_1^2)^{d/2}, exponentiated from the log domain.

    Example:
        >>> schedule = AnnealSchedule(sigma1_sq=1.0, alpha=0.25, M=1, sigmas_sq=[1.0], sigma_max_sq=1.0, nominal_M=1)
        >>> round(estimate_z1(schedule, 1), 6)
        2.506628
    """
    return math.exp(log_z1(schedule, d))


def z1_log_bounds(schedule: AnnealSchedule, d: int, mu: float, L: float) -> Tuple[float, float]:
    """
    Bounds on log(Z1_hat / Z1) for a potential with f(0) = 0 at its minimizer 0.

    mu ||x||^2/2 <= f(x) <= L ||x||^2/2 sandwiches Z1 between the Gaussian
    integrals at precisions 1/sigma_1^2 + L and 1/sigma_1^2 + mu.
    """
    s = schedule.sigma1_sq
    return 0.5 * d * math.log1p(mu * s), 0.5 * d * math.log1p(L * s)
