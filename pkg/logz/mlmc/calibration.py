"""Empirical coupling-gap measurements and variance-model calibration."""
import logging
from typing import Sequence, Tuple

import numpy as np
from scipy import optimize

from logz.core.exceptions import NumericalFailureException, ValidationException
from logz.core.rng import RngStream
from logz.models.plan import VarianceModel
from logz.mlmc.estimator import CoupledRunner

logger = logging.getLogger(__name__)


def measure_gaps(
    coupled_runner: CoupledRunner,
    etas: Sequence[float],
    n_pairs: int,
    T: float,
    rng: RngStream,
) -> np.ndarray:
    """Mean squared fine/coarse gap for each coarse step; stream rng.child(j) for etas[j]."""
    if n_pairs < 1 or not etas:
        raise ValidationException("Need at least one step size and one pair")
    gaps = []
    for j, eta in enumerate(etas):
        pair = coupled_runner(n_pairs, float(eta), T, rng.child(j).generator())
        gaps.append(float(np.mean(pair.gap_sq())))
    return np.asarray(gaps)


def coupling_decay_slope(
    coupled_runner: CoupledRunner,
    etas: Sequence[float],
    n_pairs: int,
    T: float,
    rng: RngStream,
) -> Tuple[float, np.ndarray]:
    """
    Log-log slope of the mean squared gap against the coarse step.

    Returns:
        (slope, gaps)
    """
    gaps = measure_gaps(coupled_runner, etas, n_pairs, T, rng)
    if np.any(gaps <= 0):
        raise NumericalFailureException("Coupled gaps vanish; slope undefined")
    slope = float(np.polyfit(np.log(etas), np.log(gaps), 1)[0])
    logger.info(f"Coupling gap slope {slope:.3f} over etas {list(etas)}")
    return slope, gaps


def calibrate_variance_model(
    coupled_runner: CoupledRunner,
    etas: Sequence[float],
    n_pairs: int,
    T: float,
    rng: RngStream,
    exponents: Sequence[float] = (2.0,),
) -> VarianceModel:
    """
    Fit non-negative coefficients A_m of F(eta) = sum A_m eta^beta_m to measured gaps.

    Residuals are relative to the measured gaps. The fitted model is
    returned; configured constants are left untouched.
    """
    gaps = measure_gaps(coupled_runner, etas, n_pairs, T, rng)
    etas = np.asarray(etas, dtype=float)
    design = np.stack([etas ** beta for beta in exponents], axis=1)
    weights = 1.0 / np.maximum(gaps, np.finfo(float).tiny)
    coefficients, _ = optimize.nnls(design * weights[:, None], np.ones_like(gaps))
    if not np.any(coefficients > 0):
        raise NumericalFailureException("Calibration produced an all-zero variance model")
    model = VarianceModel(terms=[(float(a), float(b)) for a, b in zip(coefficients, exponents)])
    logger.info(f"Calibrated variance model {model.terms}")
    return model
