"""Multilevel Monte Carlo planning and estimation."""
from logz.mlmc.planner import plan_levels, predicted_queries
from logz.mlmc.estimator import mlmc_estimate, level_values
from logz.mlmc.calibration import measure_gaps, coupling_decay_slope, calibrate_variance_model

__all__ = [
    "plan_levels",
    "predicted_queries",
    "mlmc_estimate",
    "level_values",
    "measure_gaps",
    "coupling_decay_slope",
    "calibrate_variance_model",
]
