"""Gradient-oracle potentials."""
from logz.potentials.base import TargetPotential, QueryCounter, CountingPotential, wrap_counting
from logz.potentials.quadratic import (
    DiagQuadraticPotential,
    GaussianPotential,
    make_gaussian,
    make_diag_quadratic,
)
from logz.potentials.stage import AnnealStagePotential, make_annealed_stage
from logz.potentials.factory import build_target, load_instance

__all__ = [
    "TargetPotential",
    "QueryCounter",
    "CountingPotential",
    "wrap_counting",
    "DiagQuadraticPotential",
    "GaussianPotential",
    "make_gaussian",
    "make_diag_quadratic",
    "AnnealStagePotential",
    "make_annealed_stage",
    "build_target",
    "load_instance",
]
