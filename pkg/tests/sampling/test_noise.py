"""Statistical tests for the (G, H) noise draws and their coupling algebra."""
import numpy as np
import pytest

from logz.core.rng import RngStream
from logz.samplers import combine_uld_noise, draw_gh, gh_covariance

SAMPLES = 1_000_000
STANDARD_ERRORS = 4.0


def _assert_covariance(g: np.ndarray, h: np.ndarray, expected):
    """Empirical (Var G, Cov, Var H) within four standard errors of the closed form."""
    var_g, cov_gh, var_h = (float(v) for v in expected)
    n = g.size
    g, h = g.ravel(), h.ravel()
    observed = (np.mean(g * g), np.mean(g * h), np.mean(h * h))
    errors = (
        np.sqrt(2.0 / n) * var_g,
        np.sqrt((var_g * var_h + cov_gh ** 2) / n),
        np.sqrt(2.0 / n) * var_h,
    )
    for value, target, error in zip(observed, (var_g, cov_gh, var_h), errors):
        assert abs(value - target) <= STANDARD_ERRORS * error


@pytest.mark.sampling
@pytest.mark.parametrize("s", [0.01, 0.1, 0.5])
def test_gh_covariance_matches_draws(s):
    """Test the empirical covariance of (G, H) against the closed form."""
    pair = draw_gh(s, RngStream(1), (SAMPLES, 1))
    _assert_covariance(pair.g, pair.h, gh_covariance(s))


@pytest.mark.sampling
def test_gh_offset_rescales_g():
    """Test an interval starting at a has G scaled by e^{2a}."""
    pair = draw_gh(0.3, RngStream(2), (SAMPLES, 1), offset=0.5)
    var_g, cov_gh, var_h = gh_covariance(0.3)
    _assert_covariance(pair.g, pair.h, (np.e ** 2 * var_g, np.e * cov_gh, var_h))


@pytest.mark.sampling
def test_combined_half_steps_have_full_step_law():
    """Test two half-step draws combine to the covariance of one full step."""
    eta = 0.4
    gen = RngStream(3).generator()
    first = draw_gh(eta / 2, gen, (SAMPLES, 1))
    second = draw_gh(eta / 2, gen, (SAMPLES, 1))
    combined = combine_uld_noise(first, second, eta)
    assert combined.interval == eta
    _assert_covariance(combined.g, combined.h, gh_covariance(eta))


@pytest.mark.sampling
def test_zero_interval_is_silent():
    """Test s = 0 draws exact zeros."""
    pair = draw_gh(0.0, RngStream(4), (10, 2))
    assert np.all(pair.g == 0.0)
    assert np.all(pair.h == 0.0)
