"""Unit tests for truncation radii and truncated ratios."""
import math

import numpy as np
import pytest

from logz.annealing import (
    build_schedule,
    estimate_radius,
    g_tail_bound,
    lipschitz_budget,
    make_truncated_ratio,
    radius_accuracy,
    radius_sample_count,
)
from logz.annealing.truncation import radius_margin
from logz.core.rng import RngStream
from logz.models import AnnealSchedule
from logz.oracles import chi_mean, gaussian_truncation_bias
from logz.samplers import get_sampler


@pytest.fixture
def two_stage() -> AnnealSchedule:
    """Ladder 1/4, 1/2."""
    return AnnealSchedule(sigma1_sq=0.25, alpha=1.0, M=2, sigmas_sq=[0.25, 0.5], sigma_max_sq=0.5, nominal_M=2)


@pytest.mark.unit
def test_radius_sample_count(two_stage):
    """Test S = 2^10 M and its cap."""
    assert radius_sample_count(two_stage) == (2048, False)
    assert radius_sample_count(two_stage, 100) == (100, True)
    assert radius_sample_count(two_stage, 4096) == (2048, False)


@pytest.mark.unit
def test_radius_accuracy_and_lipschitz_budget(two_stage):
    """Test sigma_i/8 and 112e/sigma_i before the last stage, mu-based at it."""
    assert radius_accuracy(two_stage, 1, 4.0) == pytest.approx(0.5 / 8)
    assert radius_accuracy(two_stage, 2, 4.0) == pytest.approx(1 / 16)
    assert lipschitz_budget(two_stage, 1, 4.0) == pytest.approx(224 * math.e)
    assert lipschitz_budget(two_stage, 2, 4.0) == pytest.approx(4 * math.e ** 2)


@pytest.mark.unit
def test_truncated_ratio_caps_at_radius(two_stage):
    """Test h = min(g, g(r_plus))."""
    h = make_truncated_ratio(two_stage, 1, 1.5, 1.0)
    assert h.coefficient == pytest.approx(1.0)
    assert h.log_cap == pytest.approx(2.25)
    assert float(h(np.zeros(2))) == pytest.approx(1.0)
    assert float(h(np.array([1.0, 0.0]))) == pytest.approx(math.e)
    assert float(h(np.array([3.0, 0.0]))) == pytest.approx(math.exp(2.25))
    assert float(h.untruncated(np.array([3.0, 0.0]))) == pytest.approx(math.exp(9.0))
    batch = h(np.array([[0.0, 0.0], [3.0, 4.0]]))
    assert batch.shape == (2,)


@pytest.mark.unit
def test_g_tail_bound(two_stage):
    """Test the Gaussian tail bound and its trivial branch."""
    assert g_tail_bound(two_stage, 1, 1.0, 2.0, 1.0) == 1.0
    assert g_tail_bound(two_stage, 1, 3.0, 2.0, 1.0) == pytest.approx(math.exp(-1.5))
    assert g_tail_bound(two_stage, 2, 3.0, 2.0, 1.0) == pytest.approx(math.exp(-0.5))


@pytest.mark.unit
def test_estimate_radius_under_caps(gaussian_2d, capped_settings):
    """Test the radius chains, their query count and the binding caps."""
    schedule = build_schedule(2, 1.0, 1.0, 0.5, max_stages=3)
    sampler = get_sampler("uld", capped_settings)
    r_hat, r_plus, info = estimate_radius(
        gaussian_2d, schedule, schedule.M, sampler, RngStream(11), 0.5, 1.0, capped_settings
    )
    assert info["S"] == 32
    assert info["samples_capped"]
    assert info["steps_capped"]
    assert info["eta"] == pytest.approx(info["T"] / 100)
    assert info["queries"] == 32 * sampler.chain_cost(info["eta"], info["T"])
    assert r_plus - r_hat == pytest.approx(radius_margin(schedule, schedule.M, 0.5, 1.0))
    assert abs(r_hat - math.sqrt(math.pi / 2)) < 0.5


@pytest.mark.unit
def test_estimate_radius_is_deterministic(gaussian_2d, capped_settings):
    """Test the radius depends only on the stream."""
    schedule = build_schedule(2, 1.0, 1.0, 0.5, max_stages=3)
    sampler = get_sampler("rmm", capped_settings)
    first = estimate_radius(gaussian_2d, schedule, 2, sampler, RngStream(5), 0.5, 1.0, capped_settings)
    second = estimate_radius(gaussian_2d, schedule, 2, sampler, RngStream(5), 0.5, 1.0, capped_settings)
    assert first[0] == second[0]


@pytest.mark.unit
@pytest.mark.parametrize("stage", [1, 2, 3])
@pytest.mark.parametrize("spread", [0.5, 1.0, 2.0])
def test_truncation_bias_below_tail_bound(stage, spread):
    """Test the closed-form truncation mass of a Gaussian stage never exceeds the tail bound."""
    d, s2 = 3, 1.0
    schedule = AnnealSchedule(sigma1_sq=0.1, alpha=1.0, M=3, sigmas_sq=[0.1, 0.2, 0.4], sigma_max_sq=0.4, nominal_M=3)
    nxt = schedule.next_sigma_sq(stage)
    precision = 1 / s2 + (0.0 if nxt is None else 1 / nxt)
    r_bar = chi_mean(d, 1 / math.sqrt(precision))
    r_plus = r_bar + spread / math.sqrt(precision)
    bias = gaussian_truncation_bias(s2, schedule.sigma_sq(stage), nxt, r_plus, d)
    assert 0.0 <= bias <= g_tail_bound(schedule, stage, r_plus, r_bar, 1 / s2)
