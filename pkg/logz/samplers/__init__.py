"""Langevin samplers and their synchronous couplings."""
from logz.core.exceptions import ValidationException
from logz.samplers.base import (
    PhasePoint,
    GHPair,
    UldParams,
    CoupledPair,
    LangevinSampler,
)
from logz.samplers.noise import (
    draw_gh,
    gh_covariance,
    combine_uld_noise,
    RmmNoise,
    draw_rmm_noise,
    combine_rmm_noise,
)
from logz.samplers.uld import (
    uld_step,
    uld_run,
    uld_coupled_run,
    uld_mixing_time,
    default_uld_params,
    uld_variance_model,
    UldSampler,
)
from logz.samplers.rmm import (
    rmm_step,
    rmm_run,
    rmm_coupled_run,
    rmm_mixing_time,
    default_rmm_params,
    rmm_variance_model,
    RmmSampler,
)
from logz.samplers.mala import (
    MalaResult,
    mala_log_acceptance,
    mala_chain,
    default_mala_params,
    warm_start,
)


def get_sampler(family: str, settings=None) -> LangevinSampler:
    """Sampler for 'uld' or 'rmm' (method names 'mlmc-uld'/'mlmc-rmm' accepted)."""
    family = family.replace("mlmc-", "")
    if family == "uld":
        return UldSampler(settings)
    if family == "rmm":
        return RmmSampler(settings)
    raise ValidationException(f"Unknown sampler family: {family}")


__all__ = [
    "PhasePoint",
    "GHPair",
    "UldParams",
    "CoupledPair",
    "LangevinSampler",
    "draw_gh",
    "gh_covariance",
    "combine_uld_noise",
    "RmmNoise",
    "draw_rmm_noise",
    "combine_rmm_noise",
    "uld_step",
    "uld_run",
    "uld_coupled_run",
    "uld_mixing_time",
    "default_uld_params",
    "uld_variance_model",
    "UldSampler",
    "rmm_step",
    "rmm_run",
    "rmm_coupled_run",
    "rmm_mixing_time",
    "default_rmm_params",
    "rmm_variance_model",
    "RmmSampler",
    "MalaResult",
    "mala_log_acceptance",
    "mala_chain",
    "default_mala_params",
    "warm_start",
    "get_sampler",
]
