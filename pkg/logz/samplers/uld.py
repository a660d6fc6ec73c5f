"""Underdamped Langevin dynamics with the exact exponential integrator."""
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
    GHPair,
    LangevinSampler,
    PhasePoint,
    StepCallback,
    UldParams,
    check_dimension,
    checked_grad,
    coupled_steps,
)
from logz.samplers.noise import combine_uld_noise, draw_gh
from logz.utils.helpers import round_up_to_multiple

logger = logging.getLogger(__name__)

INTERVAL_RTOL = 1e-9


def uld_step(p: PhasePoint, stage: TargetPotential, params: UldParams, gh: GHPair) -> PhasePoint:
    """
    One exponential-integrator step of size eta with gamma = 2, u = 1/L.

    Uses one gradient query per chain at the current position.
    """
    eta = params.eta
    if not np.allclose(gh.interval, eta, rtol=INTERVAL_RTOL, atol=0.0):
        raise ValidationException(f"Noise interval {gh.interval} does not match step {eta}")
    check_dimension(stage, p.x)

    decay = math.exp(-2 * eta)
    one_minus = -math.expm1(-2 * eta)
    L = params.L
    root_L = math.sqrt(L)

    grad = checked_grad(stage, p.x)
    v_new = decay * p.v - (one_minus / (2 * L)) * grad + (2 / root_L) * decay * gh.g
    x_new = (
        p.x
        + 0.5 * one_minus * p.v
        - ((eta - 0.5 * one_minus) / (2 * L)) * grad
        + (gh.h - decay * gh.g) / root_L
    )
    return PhasePoint(x_new, v_new)


def uld_run(
    x0,
    stage: TargetPotential,
    eta: float,
    T: float,
    rng: RngLike,
    on_step: Optional[StepCallback] = None,
) -> PhasePoint:
    """Single chain(s) from (x0, 0) over num_steps(T, eta) steps."""
    gen = as_generator(rng)
    state = PhasePoint.at_rest(x0)
    check_dimension(stage, state.x)
    params = UldParams(eta=eta, T=T, L=stage.L)
    for step in range(params.steps):
        gh = draw_gh(eta, gen, state.x.shape)
        state = uld_step(state, stage, params, gh)
        if on_step is not None:
            on_step((step + 1) * eta, state)
    return state


def uld_coupled_run(x0, stage: TargetPotential, eta: float, T: float, rng: RngLike) -> CoupledPair:
    """
    Synchronously coupled chains with steps eta/2 and eta.

    Per coarse step two half-step noise draws advance the fine chain twice;
    their combination advances the coarse chain once.
    """
    gen = as_generator(rng)
    steps = coupled_steps(eta, T)
    fine = PhasePoint.at_rest(x0)
    check_dimension(stage, fine.x)
    coarse = PhasePoint(fine.x.copy(), fine.v.copy())

    half = eta / 2
    fine_params = UldParams(eta=half, T=T, L=stage.L)
    coarse_params = UldParams(eta=eta, T=T, L=stage.L)
    for _ in range(steps):
        first = draw_gh(half, gen, fine.x.shape)
        second = draw_gh(half, gen, fine.x.shape)
        fine = uld_step(fine, stage, fine_params, first)
        fine = uld_step(fine, stage, fine_params, second)
        coarse = uld_step(coarse, stage, coarse_params, combine_uld_noise(first, second, eta))
    return CoupledPair(x_fine=fine.x, x_coarse=coarse.x, eta=eta)


def uld_mixing_time(stage: TargetPotential, eps: float) -> float:
    """T(eps) = (kappa/2) log(24 sqrt(d/mu)/eps), chains started at the minimizer."""
    if not eps > 0:
        raise ValidationException(f"eps must be positive, got {eps}")
    argument = 24 * math.sqrt(stage.d / stage.mu) / eps
    return max(0.0, 0.5 * stage.kappa * math.log(argument))


def default_uld_params(stage: TargetPotential, epsilon: float) -> Tuple[float, float]:
    """(eta, T) for W2 accuracy epsilon; T is at least one step."""
    if not epsilon > 0:
        raise ValidationException(f"epsilon must be positive, got {epsilon}")
    d, mu, kappa = stage.d, stage.mu, stage.kappa
    eta = epsilon * math.sqrt(mu / d) / (208 * kappa)
    T = max(0.0, 0.5 * kappa * math.log(48 * (d / mu) / epsilon))
    return eta, round_up_to_multiple(T, eta)


def uld_variance_model(stage: TargetPotential, constant: float) -> VarianceModel:
    """F(eta) = C kappa^2 d/mu eta^2."""
    return VarianceModel(terms=[(constant * stage.kappa ** 2 * stage.d / stage.mu, 2.0)])


class UldSampler(LangevinSampler):
    """Exponential-integrator ULD."""

    family = "uld"
    grad_cost_per_step = 1

    def run(self, stage, x0, eta, T, rng, on_step=None) -> PhasePoint:
        return uld_run(x0, stage, eta, T, rng, on_step)

    def run_coupled(self, stage, x0, eta, T, rng) -> CoupledPair:
        return uld_coupled_run(x0, stage, eta, T, rng)

    def mixing_time(self, stage, eps) -> float:
        return uld_mixing_time(stage, eps)

    def accuracy_params(self, stage, eps) -> Tuple[float, float]:
        eta, T = default_uld_params(stage, eps)
        eta_max = self.eta_max(stage)
        if eta > eta_max:
            eta = eta_max
            T = round_up_to_multiple(T, eta)
        return eta, T

    def variance_model(self, stage, L_g, eps_b) -> VarianceModel:
        return uld_variance_model(stage, self.settings.ULD_VARIANCE_CONSTANT)
