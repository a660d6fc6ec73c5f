"""Annealing estimators of normalizing constants."""
from logz.annealing.schedule import (
    build_schedule,
    build_mala_schedule,
    log_z1,
    estimate_z1,
    z1_log_bounds,
)
from logz.annealing.truncation import (
    radius_accuracy,
    radius_sample_count,
    estimate_radius,
    lipschitz_budget,
    make_truncated_ratio,
    g_tail_bound,
)
from logz.annealing.budget import combine_error_check
from logz.annealing.stage import StageEstimate, estimate_stage_ratio
from logz.annealing.pipeline import AnnealingPipeline, run_pipeline
from logz.annealing.mala_pipeline import MalaAnnealingPipeline, mala_draw_count, run_mala_pipeline

__all__ = [
    "build_schedule",
    "build_mala_schedule",
    "log_z1",
    "estimate_z1",
    "z1_log_bounds",
    "radius_accuracy",
    "radius_sample_count",
    "estimate_radius",
    "lipschitz_budget",
    "make_truncated_ratio",
    "g_tail_bound",
    "combine_error_check",
    "StageEstimate",
    "estimate_stage_ratio",
    "AnnealingPipeline",
    "run_pipeline",
    "MalaAnnealingPipeline",
    "mala_draw_count",
    "run_mala_pipeline",
]
