"""Exact draws of the Brownian functionals (G, H) and their coupling algebra."""
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from logz.core.exceptions import NumericalFailureException, ValidationException
from logz.core.rng import RngLike, as_generator
from logz.samplers.base import GHPair

SERIES_CUTOFF = 0.5
SERIES_TERMS = 25
DET_TOLERANCE = 1e-12

# coefficients of s^m, m >= 3, in s (e^{2s} + 1) - (e^{2s} - 1)
_SERIES = [(m, 2.0 ** (m - 1) * (m - 2) / math.factorial(m)) for m in range(3, 3 + SERIES_TERMS)]

Interval = Union[float, np.ndarray]


def gh_covariance(s: Interval) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Var G, Cov(G, H), Var H) per coordinate for interval length s."""
    s = np.asarray(s, dtype=float)
    return np.expm1(4 * s) / 4, np.expm1(2 * s) / 2, s


def _schur_numerator(s: np.ndarray, u: np.ndarray) -> np.ndarray:
    """w = s (u + 2) - u with u = e^{2s} - 1, free of cancellation for small s."""
    series = np.zeros_like(s)
    small = s < SERIES_CUTOFF
    if np.any(small):
        ss = np.where(small, s, 0.0)
        for m, coefficient in _SERIES:
            series = series + coefficient * ss ** m
    direct = s * (u + 2) - u
    return np.where(small, series, direct)


def draw_gh(s: Interval, rng: RngLike, size: Tuple[int, ...], offset: Interval = 0.0) -> GHPair:
    """
    Draw (G, H) over an interval of length s starting at offset.

    G = int_a^{a+s} e^{2t} dB_t and H = int_a^{a+s} dB_t, so the offset only
    rescales G by e^{2a}. s and offset may be scalars or (n, 1) arrays.

    Args:
        s: Interval length(s), >= 0
        rng: Random stream or generator (two standard normal blocks are consumed)
        size: Output shape, normally (n, d)
        offset: Interval start(s)

    Returns:
        GHPair
    """
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0) or not np.all(np.isfinite(s_arr)):
        raise ValidationException(f"Interval length must be finite and >= 0, got {s}")

    gen = as_generator(rng)
    z1 = gen.standard_normal(size)
    z2 = gen.standard_normal(size)

    u = np.expm1(2 * s_arr)
    w = _schur_numerator(s_arr, u)
    if np.any(u * w / 4 < -DET_TOLERANCE):
        raise NumericalFailureException(f"(G, H) covariance is not positive semidefinite at s={s}")

    l11 = np.sqrt(np.expm1(4 * s_arr) / 4)
    l21 = np.sqrt(u / (u + 2))
    l22 = np.sqrt(np.maximum(w, 0.0) / (u + 2))

    g = l11 * z1
    h = l21 * z1 + l22 * z2
    if np.any(np.asarray(offset) != 0):
        g = g * np.exp(2 * np.asarray(offset, dtype=float))
    return GHPair(g=g, h=h, interval=s if np.ndim(s) else float(s))


def combine_uld_noise(first: GHPair, second: GHPair, eta: float) -> GHPair:
    """Coarse (G, H) over [0, eta] from two consecutive half-step draws."""
    return GHPair(
        g=first.g + math.exp(eta) * second.g,
        h=first.h + second.h,
        interval=eta,
    )


@dataclass(frozen=True)
class RmmNoise:
    """(G1, H1) over [0, alpha eta] and (G2, H2) over [alpha eta, eta], kernels from the step start."""
    g1: np.ndarray
    h1: np.ndarray
    g2: np.ndarray
    h2: np.ndarray


def draw_rmm_noise(alpha: np.ndarray, eta: float, rng: RngLike, size: Tuple[int, ...]) -> RmmNoise:
    """Noise of one midpoint step with per-chain alpha of shape (n, 1)."""
    gen = as_generator(rng)
    first = draw_gh(alpha * eta, gen, size)
    second = draw_gh((1.0 - alpha) * eta, gen, size, offset=alpha * eta)
    return RmmNoise(g1=first.g, h1=first.h, g2=second.g, h2=second.h)


def combine_rmm_noise(
    eta: float,
    alpha1: np.ndarray,
    alpha2: np.ndarray,
    heads: np.ndarray,
    first: RmmNoise,
    second: RmmNoise,
) -> Tuple[np.ndarray, RmmNoise]:
    """
    Coarse midpoint and noise from two half-step draws.

    Heads places the coarse midpoint in the first half (alpha = alpha1/2),
    tails in the second (alpha = (1 + alpha2)/2). Second-half integrals are
    shifted by eta/2, which multiplies their G terms by e^eta.

    Returns:
        (alpha, RmmNoise) for the coarse step of size eta
    """
    e = math.exp(eta)
    heads = np.asarray(heads, dtype=bool)
    alpha = np.where(heads, alpha1 / 2.0, (1.0 + alpha2) / 2.0)

    g1 = np.where(heads, first.g1, first.g1 + first.g2 + e * second.g1)
    h1 = np.where(heads, first.h1, first.h1 + first.h2 + second.h1)
    g2 = np.where(heads, first.g2 + e * (second.g1 + second.g2), e * second.g2)
    h2 = np.where(heads, first.h2 + second.h1 + second.h2, second.h2)
    return alpha, RmmNoise(g1=g1, h1=h1, g2=g2, h2=h2)
