"""Closed-form normalizers and stage ratios for Gaussian bases."""
import math
from typing import Optional, Sequence

import numpy as np
from scipy import special, stats

from logz.core.exceptions import ValidationException


def analytic_gaussian_Z(lambdas: Sequence[float]) -> float:
    """
    log Z of f(x) = sum_i lambda_i x_i^2 / 2.

    Example:
        >>> round(analytic_gaussian_Z([1.0, 1.0]), 6)
        1.837877
    """
    lambdas = np.asarray(lambdas, dtype=float)
    if lambdas.size == 0 or np.any(lambdas <= 0):
        raise ValidationException("lambdas must be non-empty and positive")
    return float(0.5 * np.sum(np.log(2 * math.pi / lambdas)))


def _precision(sigma_sq: Optional[float]) -> float:
    if sigma_sq is None or math.isinf(sigma_sq):
        return 0.0
    if not sigma_sq > 0:
        raise ValidationException(f"sigma^2 must be positive, got {sigma_sq}")
    return 1.0 / sigma_sq


def gaussian_log_stage_ratio(s2: float, sigma_i_sq: float, sigma_next_sq: Optional[float], d: int) -> float:
    """
    log E_{rho_i} g_i for the base N(0, s2 I).

    With a = 1/sigma_i^2 + 1/s2 and b = 1/sigma_i^2 - 1/sigma_{i+1}^2 the
    ratio is (a/(a-b))^{d/2}; sigma_next_sq None or inf is the last stage.
    """
    if not s2 > 0:
        raise ValidationException(f"s2 must be positive, got {s2}")
    a = _precision(sigma_i_sq) + 1.0 / s2
    b = _precision(sigma_i_sq) - _precision(sigma_next_sq)
    if b >= a:
        raise ValidationException("Tilt is not integrable (b >= a)")
    return 0.5 * d * (math.log(a) - math.log(a - b))


def gaussian_stage_ratio(s2: float, sigma_i_sq: float, sigma_next_sq: Optional[float], d: int) -> float:
    """Exact R_i = Z_{i+1}/Z_i for the base N(0, s2 I)."""
    return math.exp(gaussian_log_stage_ratio(s2, sigma_i_sq, sigma_next_sq, d))


def gaussian_log_variance_ratio(s2: float, sigma2: float, alpha: float, d: int) -> float:
    """log of E e^{-(1+alpha)|x|^2/(2 sigma2)} E e^{-(1-alpha)|x|^2/(2 sigma2)} / (E e^{-|x|^2/(2 sigma2)})^2 under N(0, s2 I)."""
    if not (s2 > 0 and sigma2 > 0):
        raise ValidationException("s2 and sigma2 must be positive")
    if not 0 <= alpha <= 0.5:
        raise ValidationException(f"alpha must be in [0, 1/2], got {alpha}")
    r = s2 / sigma2
    return -0.5 * d * (math.log1p((1 + alpha) * r) + math.log1p((1 - alpha) * r) - 2 * math.log1p(r))


def gaussian_variance_ratio(s2: float, sigma2: float, alpha: float, d: int) -> float:
    """Relative second moment of the stage ratio; at most exp(4 alpha^2 d)."""
    return math.exp(gaussian_log_variance_ratio(s2, sigma2, alpha, d))


def gaussian_last_stage_ratio(s2: float, sigma_M_sq: float, d: int) -> float:
    """E e^{-|x|^2/(2 sigma^2)} E e^{|x|^2/(2 sigma^2)} under N(0, s2 I); needs s2 < sigma^2."""
    r = s2 / sigma_M_sq
    if not 0 < r < 1:
        raise ValidationException(f"Need 0 < s2 < sigma_M^2, got s2={s2}, sigma_M^2={sigma_M_sq}")
    return math.exp(-0.5 * d * (math.log1p(r) + math.log1p(-r)))


def gaussian_truncation_bias(
    s2: float,
    sigma_i_sq: float,
    sigma_next_sq: Optional[float],
    r_plus: float,
    d: int,
) -> float:
    """
    Relative truncation error E_{rho_i}(g_i - h_i) / E_{rho_i} g_i for the base N(0, s2 I).

    rho_i tilted by g_i is rho_{i+1}, so the error is the tilted tail mass
    beyond r_plus minus the capped untilted tail, both chi-square tails.
    """
    p_i = _precision(sigma_i_sq) + 1.0 / s2
    p_next = _precision(sigma_next_sq) + 1.0 / s2
    a = 0.5 * (p_i - p_next)
    log_R = 0.5 * d * (math.log(p_i) - math.log(p_next))
    r2 = r_plus ** 2
    tilted_tail = stats.chi2.sf(r2 * p_next, d)
    capped_tail = math.exp(a * r2 - log_R) * stats.chi2.sf(r2 * p_i, d)
    return float(tilted_tail - capped_tail)


def chi_mean(d: int, scale: float = 1.0) -> float:
    """
    E|x| for x ~ N(0, scale^2 I_d).

    Example:
        >>> round(chi_mean(1), 4)
        0.7979
    """
    return scale * math.sqrt(2) * math.exp(special.gammaln((d + 1) / 2) - special.gammaln(d / 2))
