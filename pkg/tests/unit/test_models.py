"""Unit tests for pydantic schemas."""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from logz.models import (
    BenchConfig,
    ErrorBudget,
    LevelPlan,
    RunConfig,
    RunReport,
    SampleConfig,
    StageRecord,
    TargetSpec,
    TruncatedRatio,
    VarianceModel,
)


@pytest.mark.unit
def test_variance_model_closed_form_solve():
    """Test single-term inversion and the eta_max clamp."""
    model = VarianceModel(terms=[(4.0, 2.0)])
    assert model.solve(1.0, 10.0) == pytest.approx(0.5)
    assert model.solve(1.0, 0.1) == 0.1
    assert model.evaluate(0.0) == 0.0


@pytest.mark.unit
def test_variance_model_bisection():
    """Test bisection on a two-term model."""
    model = VarianceModel(terms=[(1.0, 6.0), (1.0, 3.0)])
    eta = model.solve(0.01, 1.0)
    assert model.evaluate(eta) == pytest.approx(0.01, rel=1e-8)
    assert eta < 1.0


@pytest.mark.unit
def test_variance_model_validation():
    """Test rejected terms."""
    with pytest.raises(ValidationError):
        VarianceModel(terms=[(-1.0, 2.0)])
    with pytest.raises(ValidationError):
        VarianceModel(terms=[(1.0, 1.0)])
    with pytest.raises(ValidationError):
        VarianceModel(terms=[(0.0, 2.0)])


@pytest.mark.unit
def test_level_plan_shape():
    """Test plan validation and derived step sizes."""
    plan = LevelPlan(eta0=0.5, k=2, Ns=[8, 4, 2], T=1.0, eps_b=0.1, eps_sigma=0.1, L_g=1.0)
    assert plan.etas == [0.5, 0.25, 0.125]
    with pytest.raises(ValidationError):
        LevelPlan(eta0=0.5, k=2, Ns=[8, 4], T=1.0, eps_b=0.1, eps_sigma=0.1, L_g=1.0)
    with pytest.raises(ValidationError):
        LevelPlan(eta0=0.5, k=0, Ns=[0], T=1.0, eps_b=0.1, eps_sigma=0.1, L_g=1.0)


@pytest.mark.unit
def test_error_budget_split():
    """Test the per-stage budgets and the combine split."""
    budget = ErrorBudget(eps=0.25, M=4)
    assert budget.eps_parts == (0.25 / 8, 0.25 / 4, 0.25 / 4)
    assert budget.eps_b == pytest.approx(0.25 / 64)
    assert budget.eps_sigma == pytest.approx(0.25 / 256)
    assert budget.eps_b + budget.truncation_budget == pytest.approx(budget.eps2 / (2 * budget.M))


@pytest.mark.unit
def test_truncated_ratio():
    """Test the cap, the exact Lipschitz constant and batch evaluation."""
    ratio = TruncatedRatio(stage=1, sigma_sq=1.0, coefficient=0.25, r_plus=2.0, L_h=1.0)
    assert ratio.log_cap == 1.0
    assert ratio.lipschitz == pytest.approx(2 * 0.25 * 2.0 * math.e)
    X = np.array([[0.0, 0.0], [1.0, 0.0], [10.0, 0.0]])
    np.testing.assert_allclose(ratio(X), [1.0, math.exp(0.25), math.e])
    assert ratio.untruncated(X)[2] == pytest.approx(math.exp(25.0))


@pytest.mark.unit
def test_target_spec_validation():
    """Test per-family parameter requirements."""
    assert TargetSpec(name="gaussian", d=2).sigma2 == 1.0
    with pytest.raises(ValidationError):
        TargetSpec(name="gaussian")
    with pytest.raises(ValidationError):
        TargetSpec(name="diag_quadratic", lambdas=[1.0, -2.0])
    with pytest.raises(ValidationError):
        TargetSpec(name="hard_instance")


@pytest.mark.unit
def test_target_spec_for_sweep():
    """Test benchmark targets."""
    assert TargetSpec.for_sweep(4, 1.0).name == "gaussian"
    spec = TargetSpec.for_sweep(3, 9.0)
    assert spec.lambdas == pytest.approx([1.0, 3.0, 9.0])
    assert TargetSpec.for_sweep(1, 4.0).lambdas == [4.0]


@pytest.mark.unit
def test_run_config_eps_names_field():
    """Test that eps = 0 is rejected with the field name."""
    with pytest.raises(ValidationError, match="eps"):
        RunConfig.model_validate({"target": {"name": "gaussian", "d": 2}, "eps": 0})


@pytest.mark.unit
def test_run_config_overrides():
    """Test override collection and forbidden extra keys."""
    config = RunConfig.model_validate(
        {"target": {"name": "gaussian", "d": 2}, "eps": 0.25, "constants": {"cf": 2.0}, "caps": {"max_stages": 3}}
    )
    overrides = config.overrides()
    assert overrides["cf"] == 2.0
    assert overrides["max_stages"] == 3
    assert config.method == "mlmc-uld"
    with pytest.raises(ValidationError):
        RunConfig.model_validate({"target": {"name": "gaussian", "d": 2}, "eps": 0.25, "colour": "red"})


@pytest.mark.unit
def test_bench_and_sample_configs():
    """Test sweep and trace config validation."""
    with pytest.raises(ValidationError):
        BenchConfig(methods=["mala"], dims=[2], eps=[0.7])
    with pytest.raises(ValidationError):
        BenchConfig(methods=[], dims=[2], eps=[0.3])
    with pytest.raises(ValidationError):
        SampleConfig(sampler="uld", target={"name": "gaussian", "d": 1}, eta=0.1)
    with pytest.raises(ValidationError):
        SampleConfig(sampler="mala", target={"name": "gaussian", "d": 1}, h=0.1)


def _report(**fields) -> RunReport:
    base = dict(method="mala", d=2, mu=1.0, L=1.0, eps=0.3, seed=0, M=2, nominal_M=2, alpha=0.5, sigma1_sq=0.1)
    base.update(fields)
    return RunReport(**base)


@pytest.mark.unit
def test_run_report_recompute_and_finalize():
    """Test log Z recomputation from stage log-ratios."""
    report = _report(log_z1_hat=0.5, log_z_exact=1.0)
    report.stages = [
        StageRecord(stage=1, sigma_sq=0.1, sigma_next_sq=0.2, log_ratio=0.25, ratio=math.exp(0.25), seconds=1.0),
        StageRecord(stage=2, sigma_sq=0.2, log_ratio=0.25, ratio=math.exp(0.25), seconds=2.0),
    ]
    report.wall_time_seconds = 3.0
    report.finalize()
    assert report.log_z_hat == 1.0
    assert report.rel_error == 0.0
    stripped = report.strip_timing()
    assert stripped.wall_time_seconds is None
    assert all(s.seconds is None for s in stripped.stages)
    assert report.wall_time_seconds == 3.0
