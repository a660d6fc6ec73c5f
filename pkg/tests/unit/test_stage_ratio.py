"""Unit tests for the Lipschitz modes of a stage estimate."""
import pytest

from logz.annealing import estimate_stage_ratio, make_truncated_ratio
from logz.core.rng import RngStream
from logz.mlmc import predicted_queries
from logz.models import AnnealSchedule, ErrorBudget
from logz.potentials import CountingPotential, make_annealed_stage, make_gaussian
from logz.samplers import UldSampler


@pytest.fixture
def stage_inputs():
    """Counted 2-d Gaussian base, its first stage on the ladder 1/4, 1/2 and a truncated ratio."""
    schedule = AnnealSchedule(
        sigma1_sq=0.25, alpha=1.0, M=2, sigmas_sq=[0.25, 0.5], sigma_max_sq=0.5, nominal_M=2
    )
    base = CountingPotential(make_gaussian(2, 1.0))
    stage = make_annealed_stage(base, schedule.sigma_sq(1))
    ratio = make_truncated_ratio(schedule, 1, 3.0, base.mu)
    return base, stage, ratio, ErrorBudget(eps=0.5, M=2)


def _small(settings, mode):
    return settings.with_overrides(
        lipschitz_mode=mode, pilot_samples=4, max_levels=1, max_samples_per_level=32
    )


@pytest.mark.unit
def test_budget_mode_uses_relative_budgets_without_pilot(settings, stage_inputs):
    """Test the L_h bound plans directly on the relative budgets."""
    base, stage, ratio, budget = stage_inputs
    small = _small(settings, "budget")
    result = estimate_stage_ratio(
        stage, ratio, budget, UldSampler(small), RngStream(1), counter=base.counter, settings=small
    )
    assert result.pilot_queries == 0
    assert result.scale == 1.0
    assert result.plan.L_g == ratio.L_h
    assert result.plan.eps_b == budget.eps_b
    assert base.counter.grad_queries == predicted_queries(result.plan)


@pytest.mark.unit
def test_exact_mode_scales_budgets_by_pilot_mean(settings, stage_inputs):
    """Test the exact Lipschitz constant with pilot-scaled budgets and counted pilot queries."""
    base, stage, ratio, budget = stage_inputs
    small = _small(settings, "exact")
    result = estimate_stage_ratio(
        stage, ratio, budget, UldSampler(small), RngStream(1), counter=base.counter, settings=small
    )
    assert result.pilot_queries > 0
    assert result.scale > 1.0
    assert result.plan.L_g == ratio.lipschitz
    assert result.plan.eps_b == pytest.approx(budget.eps_b * result.scale)
    assert base.counter.grad_queries == result.pilot_queries + predicted_queries(result.plan)
