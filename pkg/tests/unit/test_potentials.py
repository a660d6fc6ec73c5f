"""Unit tests for potentials, stage potentials and query counting."""
import math

import numpy as np
import pytest

from logz.core.exceptions import ConfigException, ValidationException
from logz.models.config import TargetSpec
from logz.potentials import (
    CountingPotential,
    build_target,
    load_instance,
    make_annealed_stage,
    make_diag_quadratic,
    make_gaussian,
)
from tests.conftest import finite_difference_grad, sandwich_violation


@pytest.mark.unit
def test_gaussian_log_z():
    """Test closed-form normalizers."""
    assert math.exp(make_gaussian(2, 1.0).log_z_exact()) == pytest.approx(2 * math.pi)
    assert make_gaussian(3, 2.0).log_z_exact() == pytest.approx(1.5 * math.log(4 * math.pi))
    quad = make_diag_quadratic([1.0, 4.0])
    assert quad.log_z_exact() == pytest.approx(0.5 * math.log(2 * math.pi) + 0.5 * math.log(math.pi / 2))
    assert quad.kappa == 4.0


@pytest.mark.unit
def test_batched_value_and_grad(anisotropic_3d):
    """Test single-point and batched evaluation shapes."""
    x = np.array([1.0, -1.0, 0.5])
    assert isinstance(anisotropic_3d.value(x), float)
    assert anisotropic_3d.grad(x).shape == (3,)
    X = np.ones((4, 3))
    assert anisotropic_3d.value(X).shape == (4,)
    assert anisotropic_3d.grad(X).shape == (4, 3)
    np.testing.assert_allclose(anisotropic_3d.grad(x), finite_difference_grad(anisotropic_3d, x), atol=1e-6)


@pytest.mark.unit
def test_dimension_mismatch(gaussian_2d):
    """Test that a wrong dimension is rejected."""
    with pytest.raises(ValidationException):
        gaussian_2d.grad(np.zeros(3))


@pytest.mark.unit
def test_invalid_potentials():
    """Test constructor validation."""
    with pytest.raises(ValidationException):
        make_gaussian(0, 1.0)
    with pytest.raises(ValidationException):
        make_gaussian(2, -1.0)
    with pytest.raises(ValidationException):
        make_diag_quadratic([1.0, 0.0])


@pytest.mark.unit
def test_counting_potential(gaussian_2d):
    """Test that each evaluated point counts one query."""
    counted = CountingPotential(gaussian_2d)
    counted.grad(np.zeros((5, 2)))
    counted.grad(np.zeros(2))
    counted.value(np.zeros((3, 2)))
    assert counted.counter.snapshot() == (3, 6)
    assert counted.log_z_exact() == gaussian_2d.log_z_exact()


@pytest.mark.unit
def test_stage_potential_adds_quadratic(gaussian_2d):
    """Test f_i = f + |x|^2/(2 sigma^2) and its constants."""
    stage = make_annealed_stage(gaussian_2d, 0.5)
    x = np.array([1.0, 2.0])
    assert stage.value(x) == pytest.approx(gaussian_2d.value(x) + 5.0)
    np.testing.assert_allclose(stage.grad(x), gaussian_2d.grad(x) + 2 * x)
    assert stage.mu == 3.0
    assert stage.L == 3.0


@pytest.mark.unit
def test_stage_potential_at_infinity(gaussian_2d):
    """Test that sigma^2 = inf is the base potential."""
    stage = make_annealed_stage(gaussian_2d, math.inf)
    x = np.array([0.3, -0.7])
    assert stage.value(x) == gaussian_2d.value(x)
    assert stage.mu == gaussian_2d.mu


@pytest.mark.unit
def test_stage_queries_count_against_base(gaussian_2d):
    """Test that stage oracle calls reach the base counter."""
    counted = CountingPotential(gaussian_2d)
    stage = make_annealed_stage(counted, 1.0)
    stage.grad(np.zeros((7, 2)))
    assert counted.counter.grad_queries == 7


@pytest.mark.unit
def test_convexity_sandwich(anisotropic_3d):
    """Test the mu/L sandwich of built-in potentials."""
    gen = np.random.default_rng(3)
    X = gen.normal(size=(200, 3)) * 3
    Y = gen.normal(size=(200, 3)) * 3
    assert sandwich_violation(anisotropic_3d, X, Y) == 0.0
    stage = make_annealed_stage(anisotropic_3d, 0.2)
    assert sandwich_violation(stage, X, Y) == 0.0


@pytest.mark.unit
def test_build_target(tmp_path):
    """Test the target factory for every family."""
    assert build_target(TargetSpec(name="gaussian", d=3)).d == 3
    assert build_target(TargetSpec(name="diag_quadratic", lambdas=[1.0, 9.0])).kappa == 9.0
    with pytest.raises(ConfigException):
        load_instance(str(tmp_path / "missing.json"))
