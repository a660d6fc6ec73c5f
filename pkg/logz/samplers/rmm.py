"""Underdamped Langevin dynamics with the randomized midpoint method (ULD-RMM)."""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from logz.core.exceptions import ValidationException
from logz.core.rng import RngLike, as_generator
from logz.models.plan import VarianceModel
from logz.potentials.base import TargetPotential
from logz.samplers.base import (
    CoupledPair,
    LangevinSampler,
    PhasePoint,
    StepCallback,
    UldParams,
    check_dimension,
    checked_grad,
    coupled_steps,
)
from logz.samplers.noise import RmmNoise, combine_rmm_noise, draw_rmm_noise
from logz.utils.helpers import round_up_to_multiple

logger = logging.getLogger(__name__)


def rmm_step(
    p: PhasePoint,
    stage: TargetPotential,
    params: UldParams,
    alpha,
    noise: RmmNoise,
) -> PhasePoint:
    """
    One randomized-midpoint step of size eta.

    The midpoint y estimates x at time alpha*eta; the full step then uses
    grad f(y). Two gradient queries per chain.
    """
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha < 0) or np.any(alpha > 1):
        raise ValidationException("alpha must lie in [0, 1]")
    check_dimension(stage, p.x)

    eta = params.eta
    L = params.L
    root_L = math.sqrt(L)
    a_eta = alpha * eta
    mid_decay = np.exp(-2 * a_eta)
    mid_one_minus = -np.expm1(-2 * a_eta)
    decay = math.exp(-2 * eta)
    one_minus = -math.expm1(-2 * eta)

    grad_x = checked_grad(stage, p.x)
    y = (
        p.x
        + 0.5 * mid_one_minus * p.v
        - ((a_eta - 0.5 * mid_one_minus) / (2 * L)) * grad_x
        + (noise.h1 - mid_decay * noise.g1) / root_L
    )

    grad_y = checked_grad(stage, y)
    tail_decay = np.exp(-2 * (1 - alpha) * eta)
    g_sum = noise.g1 + noise.g2
    h_sum = noise.h1 + noise.h2
    x_new = (
        p.x
        + 0.5 * one_minus * p.v
        - (eta / (2 * L)) * (1 - tail_decay) * grad_y
        + (h_sum - decay * g_sum) / root_L
    )
    v_new = decay * p.v - (eta / L) * tail_decay * grad_y + (2 / root_L) * decay * g_sum
    return PhasePoint(x_new, v_new)


def _alpha_shape(x: np.ndarray) -> Tuple[int, ...]:
    return (x.shape[0], 1) if x.ndim == 2 else (1,)


def rmm_run(
    x0,
    stage: TargetPotential,
    eta: float,
    T: float,
    rng: RngLike,
    on_step: Optional[StepCallback] = None,
) -> PhasePoint:
    """Single ULD-RMM chain(s) from (x0, 0)."""
    gen = as_generator(rng)
    state = PhasePoint.at_rest(x0)
    check_dimension(stage, state.x)
    params = UldParams(eta=eta, T=T, L=stage.L)
    for step in range(params.steps):
        alpha = gen.random(_alpha_shape(state.x))
        noise = draw_rmm_noise(alpha, eta, gen, state.x.shape)
        state = rmm_step(state, stage, params, alpha, noise)
        if on_step is not None:
            on_step((step + 1) * eta, state)
    return state


def rmm_coupled_run(x0, stage: TargetPotential, eta: float, T: float, rng: RngLike) -> CoupledPair:
    """
    Synchronously coupled ULD-RMM chains with steps eta/2 and eta.

    Per coarse step and chain: two half-step midpoints, a fair coin choosing
    which half hosts the coarse midpoint, and four half-step noise blocks.
    """
    gen = as_generator(rng)
    steps = coupled_steps(eta, T)
    fine = PhasePoint.at_rest(x0)
    check_dimension(stage, fine.x)
    coarse = PhasePoint(fine.x.copy(), fine.v.copy())

    half = eta / 2
    shape = _alpha_shape(fine.x)
    fine_params = UldParams(eta=half, T=T, L=stage.L)
    coarse_params = UldParams(eta=eta, T=T, L=stage.L)
    for _ in range(steps):
        alpha1 = gen.random(shape)
        alpha2 = gen.random(shape)
        heads = gen.random(shape) < 0.5
        first = draw_rmm_noise(alpha1, half, gen, fine.x.shape)
        second = draw_rmm_noise(alpha2, half, gen, fine.x.shape)

        fine = rmm_step(fine, stage, fine_params, alpha1, first)
        fine = rmm_step(fine, stage, fine_params, alpha2, second)

        alpha, noise = combine_rmm_noise(eta, alpha1, alpha2, heads, first, second)
        coarse = rmm_step(coarse, stage, coarse_params, alpha, noise)
    return CoupledPair(x_fine=fine.x, x_coarse=coarse.x, eta=eta)


def _log_factor(stage: TargetPotential, eps: float) -> float:
    return max(1.0, math.log(math.sqrt(stage.d / stage.mu) / eps))


def rmm_mixing_time(stage: TargetPotential, eps: float) -> float:
    """T(eps) = 2 kappa log(20 (d/mu) / eps^2)."""
    if not eps > 0:
        raise ValidationException(f"eps must be positive, got {eps}")
    return max(0.0, 2 * stage.kappa * math.log(20 * (stage.d / stage.mu) / eps ** 2))


def default_rmm_params(stage: TargetPotential, epsilon: float, c: float = 0.1) -> Tuple[float, float]:
    """
    (eta, T) for W2 accuracy epsilon.

    eta takes the smaller of the two step-size terms; logarithms are clamped
    below at 1.
    """
    if not epsilon > 0:
        raise ValidationException(f"epsilon must be positive, got {epsilon}")
    d, mu, kappa = stage.d, stage.mu, stage.kappa
    ell = _log_factor(stage, epsilon)
    first = epsilon ** (1 / 3) * kappa ** (-1 / 6) * ell ** (-1 / 6) * (mu / d) ** (1 / 6)
    second = epsilon ** (2 / 3) * ell ** (-1 / 3) * (mu / d) ** (1 / 3)
    eta = c * min(first, second)
    return eta, round_up_to_multiple(rmm_mixing_time(stage, epsilon), eta)


def rmm_variance_model(stage: TargetPotential, L_g: float, eps_b: float, constant: float) -> VarianceModel:
    """F(eta) = C log(L_g^2 d/(eps_b^2 mu)) (d kappa/mu eta^6 + d/mu eta^3), log clamped at 1."""
    d, mu, kappa = stage.d, stage.mu, stage.kappa
    if L_g > 0 and eps_b > 0:
        ell = max(1.0, math.log(L_g ** 2 * d / (eps_b ** 2 * mu)))
    else:
        ell = 1.0
    scale = constant * ell
    return VarianceModel(terms=[(scale * d * kappa / mu, 6.0), (scale * d / mu, 3.0)])


class RmmSampler(LangevinSampler):
    """Randomized-midpoint ULD; two gradient queries per step."""

    family = "rmm"
    grad_cost_per_step = 2

    def run(self, stage, x0, eta, T, rng, on_step=None) -> PhasePoint:
        return rmm_run(x0, stage, eta, T, rng, on_step)

    def run_coupled(self, stage, x0, eta, T, rng) -> CoupledPair:
        return rmm_coupled_run(x0, stage, eta, T, rng)

    def mixing_time(self, stage, eps) -> float:
        return rmm_mixing_time(stage, eps)

    def accuracy_params(self, stage, eps) -> Tuple[float, float]:
        eta, T = default_rmm_params(stage, eps, self.settings.RMM_STEP_PREFACTOR)
        eta_max = self.eta_max(stage)
        if eta > eta_max:
            eta = eta_max
            T = round_up_to_multiple(T, eta)
        return eta, T

    def variance_model(self, stage, L_g, eps_b) -> VarianceModel:
        return rmm_variance_model(stage, L_g, eps_b, self.settings.RMM_VARIANCE_CONSTANT)
