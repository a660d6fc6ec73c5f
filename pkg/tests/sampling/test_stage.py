"""Statistical tests of one annealing stage against the Gaussian closed form."""
import math

import pytest

from logz.annealing import estimate_stage_ratio, make_truncated_ratio
from logz.core.rng import RngStream
from logz.models import AnnealSchedule, ErrorBudget
from logz.oracles import gaussian_stage_ratio
from logz.potentials import make_annealed_stage, make_gaussian
from logz.samplers import UldSampler

SEEDS = range(20)


@pytest.mark.sampling
@pytest.mark.timeout(1200)
def test_stage_ratio_matches_gaussian_closed_form(settings):
    """Test R_hat lands within eps_b + 3 standard errors of (a/(a-b))^{d/2}."""
    capped = settings.with_overrides(max_levels=2, max_samples_per_level=2048)
    schedule = AnnealSchedule(
        sigma1_sq=0.25, alpha=1.0, M=2, sigmas_sq=[0.25, 0.5], sigma_max_sq=0.5, nominal_M=2
    )
    base = make_gaussian(2, 1.0)
    stage = make_annealed_stage(base, schedule.sigma_sq(1))
    # tilted law is N(0, I/3); mass beyond radius 3 is below e^-13
    ratio = make_truncated_ratio(schedule, 1, 3.0, base.mu)
    budget = ErrorBudget(eps=0.5, M=2)
    exact = gaussian_stage_ratio(1.0, 0.25, 0.5, 2)
    assert exact == pytest.approx(5 / 3)

    sampler = UldSampler(capped)
    within = 0
    for seed in SEEDS:
        result = estimate_stage_ratio(stage, ratio, budget, sampler, RngStream(seed), settings=capped)
        assert result.plan.k == 2
        assert result.plan.Ns[0] == 2048
        sd = math.sqrt(result.estimate.estimator_variance) / exact
        if abs(result.R_hat / exact - 1) <= budget.eps_b + 3 * sd:
            within += 1

    assert within >= 19
