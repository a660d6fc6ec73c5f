"""Ground-truth engines for normalizing constants."""
from logz.oracles.gaussian import (
    analytic_gaussian_Z,
    gaussian_log_stage_ratio,
    gaussian_stage_ratio,
    gaussian_log_variance_ratio,
    gaussian_variance_ratio,
    gaussian_last_stage_ratio,
    gaussian_truncation_bias,
    chi_mean,
)
from logz.oracles.concentration import mode_mean_bound
from logz.oracles.quadrature import QuadratureResult, box_radius, trapezoid_on_grid, trapezoid_Z
from logz.oracles.prodvar import ProductDeviation, simulate_product_deviation

__all__ = [
    "analytic_gaussian_Z",
    "gaussian_log_stage_ratio",
    "gaussian_stage_ratio",
    "gaussian_log_variance_ratio",
    "gaussian_variance_ratio",
    "gaussian_last_stage_ratio",
    "gaussian_truncation_bias",
    "chi_mean",
    "mode_mean_bound",
    "QuadratureResult",
    "box_radius",
    "trapezoid_on_grid",
    "trapezoid_Z",
    "ProductDeviation",
    "simulate_product_deviation",
]
