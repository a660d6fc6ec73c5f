"""Quadratic potentials with closed-form normalizing constants."""
import math
from typing import Sequence

import numpy as np

from logz.core.exceptions import ValidationException
from logz.potentials.base import TargetPotential


class DiagQuadraticPotential(TargetPotential):
    """f(x) = 1/2 sum_i lambda_i x_i^2."""

    name = "diag_quadratic"

    def __init__(self, lambdas: Sequence[float]):
        lambdas = np.asarray(lambdas, dtype=float).ravel()
        if lambdas.size == 0:
            raise ValidationException("lambdas must be non-empty")
        if not np.all(lambdas > 0) or not np.all(np.isfinite(lambdas)):
            raise ValidationException("lambdas must be finite and positive")
        super().__init__(lambdas.size, float(lambdas.min()), float(lambdas.max()))
        self.lambdas = lambdas

    def _values(self, X: np.ndarray) -> np.ndarray:
        return 0.5 * (X * X) @ self.lambdas

    def _grads(self, X: np.ndarray) -> np.ndarray:
        return X * self.lambdas

    def log_z_exact(self) -> float:
        return float(np.sum(0.5 * np.log(2 * math.pi / self.lambdas)))

    def describe(self) -> dict:
        info = super().describe()
        info["lambdas"] = self.lambdas.tolist()
        return info


class GaussianPotential(DiagQuadraticPotential):
    """Isotropic f(x) = ||x||^2 / (2 sigma2)."""

    name = "gaussian"

    def __init__(self, d: int, sigma2: float):
        if d < 1:
            raise ValidationException(f"Dimension must be >= 1, got {d}")
        if not sigma2 > 0 or not math.isfinite(sigma2):
            raise ValidationException(f"sigma2 must be finite and > 0, got {sigma2}")
        super().__init__(np.full(int(d), 1.0 / sigma2))
        self.sigma2 = float(sigma2)

    def log_z_exact(self) -> float:
        return 0.5 * self.d * math.log(2 * math.pi * self.sigma2)

    def describe(self) -> dict:
        return {"name": self.name, "d": self.d, "mu": self.mu, "L": self.L, "sigma2": self.sigma2}


def make_gaussian(d: int, sigma2: float) -> GaussianPotential:
    """
    Isotropic Gaussian target.

    Example:
        >>> p = make_gaussian(2, 1.0)
        >>> round(math.exp(p.log_z_exact()), 6)
        6.283185
    """
    return GaussianPotential(d, sigma2)


def make_diag_quadratic(lambdas: Sequence[float]) -> DiagQuadraticPotential:
    """Anisotropic quadratic with kappa = max/min lambda."""
    return DiagQuadraticPotential(lambdas)
