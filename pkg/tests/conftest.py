"""Pytest configuration and fixtures for logz tests."""
import json
from typing import Optional

import numpy as np
import pytest
from dotenv import load_dotenv

from logz.core.config import Settings, get_settings
from logz.potentials.base import TargetPotential
from logz.potentials.quadratic import make_diag_quadratic, make_gaussian

# Load test environment variables
load_dotenv()


class FlatPotential(TargetPotential):
    """f = 0 with mu = L = 1 declared; the Langevin integrators are exact on it."""

    name = "flat"

    def __init__(self, d: int):
        super().__init__(d, 1.0, 1.0)

    def _values(self, X: np.ndarray) -> np.ndarray:
        return np.zeros(X.shape[0])

    def _grads(self, X: np.ndarray) -> np.ndarray:
        return np.zeros_like(X)


class NanPotential(TargetPotential):
    """Quadratic whose gradient turns NaN outside the unit ball."""

    name = "nan"

    def __init__(self, d: int):
        super().__init__(d, 1.0, 1.0)

    def _values(self, X: np.ndarray) -> np.ndarray:
        return 0.5 * np.einsum("ij,ij->i", X, X)

    def _grads(self, X: np.ndarray) -> np.ndarray:
        out = X.copy()
        out[np.linalg.norm(X, axis=1) > 1.0] = np.nan
        return out


def finite_difference_grad(potential: TargetPotential, x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central differences of potential.value at one point."""
    x = np.asarray(x, dtype=float)
    grad = np.zeros_like(x)
    for j in range(x.size):
        step = np.zeros_like(x)
        step[j] = h
        grad[j] = (potential.value(x + step) - potential.value(x - step)) / (2 * h)
    return grad


def sandwich_violation(potential: TargetPotential, x: np.ndarray, y: np.ndarray, tol: float = 1e-9) -> float:
    """
    Largest violation of mu/2 |y-x|^2 <= f(y) - f(x) - <grad f(x), y-x> <= L/2 |y-x|^2.

    Returns 0 when the sandwich holds at every pair of rows.
    """
    x = np.atleast_2d(x)
    y = np.atleast_2d(y)
    gap = potential.value(y) - potential.value(x) - np.einsum("ij,ij->i", potential.grad(x), y - x)
    sq = np.einsum("ij,ij->i", y - x, y - x)
    low = 0.5 * potential.mu * sq - gap
    high = gap - 0.5 * potential.L * sq
    scale = tol * np.maximum(1.0, sq)
    return float(max(0.0, np.max(low - scale), np.max(high - scale)))


def write_json(path, payload) -> str:
    """Write payload as JSON and return the path as a string."""
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle)
    return str(path)


@pytest.fixture(autouse=True)
def clear_settings_cache(monkeypatch):
    """Fresh settings for every test, independent of the developer's environment."""
    for name in ("LOGZ_SEED", "THREADS", "LOG_FILE", "LIPSCHITZ_MODE"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def settings() -> Settings:
    """Default settings."""
    return get_settings()


@pytest.fixture
def capped_settings() -> Settings:
    """Desk-scale caps small enough for a multilevel run in a few seconds."""
    return get_settings().with_overrides(
        max_stages=3,
        max_levels=2,
        max_samples_per_level=64,
        max_radius_samples=32,
        max_radius_steps=100,
    )


@pytest.fixture
def mala_settings() -> Settings:
    """MALA baseline with a capped number of draws per stage."""
    return get_settings().with_overrides(max_mala_draws=2000)


@pytest.fixture
def gaussian_2d():
    """Standard Gaussian target in two dimensions."""
    return make_gaussian(2, 1.0)


@pytest.fixture
def anisotropic_3d():
    """Diagonal quadratic with kappa = 4."""
    return make_diag_quadratic([1.0, 2.0, 4.0])


@pytest.fixture
def flat_potential():
    """Zero potential in two dimensions."""
    return FlatPotential(2)


@pytest.fixture
def run_config_payload() -> dict:
    """Small MALA run config."""
    return {
        "target": {"name": "gaussian", "d": 2},
        "method": "mala",
        "eps": 0.3,
        "seed": 7,
        "caps": {"max_mala_draws": 500},
    }


def gaussian_config(method: str, seed: int = 7, caps: Optional[dict] = None) -> dict:
    """Run config for a 2-d standard Gaussian."""
    payload = {"target": {"name": "gaussian", "d": 2}, "method": method, "eps": 0.3, "seed": seed}
    if caps:
        payload["caps"] = caps
    return payload


# Markers for test categorization
def pytest_configure(config):
    """Configure pytest markers."""
    config.addinivalue_line(
        "markers", "unit: mark test as unit test"
    )
    config.addinivalue_line(
        "markers", "sampling: mark test as statistical sampler test"
    )
    config.addinivalue_line(
        "markers", "integration: mark test as integration test"
    )
    config.addinivalue_line(
        "markers", "performance: mark test as performance test"
    )
