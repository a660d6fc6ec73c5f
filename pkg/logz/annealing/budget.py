"""Error combination certificate."""
import logging
from typing import Sequence, Tuple

from logz.core.exceptions import ValidationException
from logz.models.report import CombineCertificate

logger = logging.getLogger(__name__)


def bias_threshold(eps2: float, ratio: float, M: int) -> float:
    """eps2 R / (2M)."""
    return eps2 * ratio / (2 * M)


def variance_threshold(eps3: float, ratio: float, M: int) -> float:
    """eps3^2 R^2 / (40M)."""
    return eps3 ** 2 * ratio ** 2 / (40 * M)


def combine_error_check(
    z1_log_bounds: Tuple[float, float],
    stage_biases: Sequence[float],
    stage_variances: Sequence[float],
    eps_parts: Tuple[float, float, float],
    stage_ratios: Sequence[float],
) -> CombineCertificate:
    """
    Check the hypotheses under which the product estimate is within e^{+-(eps1+eps2+eps3)}.

    Args:
        z1_log_bounds: (lower, upper) bounds on log(Z1_hat/Z1)
        stage_biases: Per-stage bias bounds |R_tilde_i - R_i|
        stage_variances: Per-stage Var(R_hat_i)
        eps_parts: (eps1, eps2, eps3)
        stage_ratios: Per-stage ratio estimates used in the thresholds

    Returns:
        CombineCertificate; certified only when every hypothesis holds

    Example:
        >>> cert = combine_error_check((0.0, 0.0), [0.0], [0.0], (0.1, 0.1, 0.1), [1.0])
        >>> cert.certified
        True
    """
    M = len(stage_ratios)
    if not (len(stage_biases) == len(stage_variances) == M):
        raise ValidationException("Need one bias, variance and ratio per stage")
    if M == 0:
        raise ValidationException("Need at least one stage")
    eps1, eps2, eps3 = eps_parts

    lower, upper = z1_log_bounds
    z1_ok = -eps1 <= lower and upper <= eps1

    bias_thresholds = [bias_threshold(eps2, r, M) for r in stage_ratios]
    variance_thresholds = [variance_threshold(eps3, r, M) for r in stage_ratios]
    bias_ok = [b <= t for b, t in zip(stage_biases, bias_thresholds)]
    variance_ok = [v <= t for v, t in zip(stage_variances, variance_thresholds)]

    certified = z1_ok and all(bias_ok) and all(variance_ok)
    if not certified:
        logger.info(
            f"Error combination not certified: z1_ok={z1_ok}, "
            f"bias fails={bias_ok.count(False)}, variance fails={variance_ok.count(False)}"
        )
    return CombineCertificate(
        certified=certified,
        eps_parts=list(eps_parts),
        z1_ok=z1_ok,
        bias_ok=bias_ok,
        variance_ok=variance_ok,
        bias_thresholds=bias_thresholds,
        variance_thresholds=variance_thresholds,
    )
