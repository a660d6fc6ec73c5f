"""Annealed stage potentials f_i(x) = ||x||^2/(2 sigma_i^2) + f(x)."""
import math

import numpy as np

from logz.core.exceptions import ValidationException
from logz.potentials.base import TargetPotential


class AnnealStagePotential(TargetPotential):
    """
    Base potential plus an isotropic quadratic.

    sigma2 = inf gives the base potential itself. Oracle calls go through the
    base's public value/grad, so they count against the base's counter.
    """

    def __init__(self, base: TargetPotential, sigma2: float):
        if not sigma2 > 0:
            raise ValidationException(f"sigma2 must be > 0, got {sigma2}")
        self.base = base
        self.sigma2 = float(sigma2)
        self.precision = 0.0 if math.isinf(sigma2) else 1.0 / sigma2
        super().__init__(base.d, base.mu + self.precision, base.L + self.precision, base.minimizer)
        self.name = f"{base.name}@stage"

    @property
    def stage_mu(self) -> float:
        return self.mu

    @property
    def stage_L(self) -> float:
        return self.L

    def _values(self, X: np.ndarray) -> np.ndarray:
        values = self.base.value(X)
        if self.precision == 0.0:
            return values
        return values + 0.5 * self.precision * np.einsum("ij,ij->i", X, X)

    def _grads(self, X: np.ndarray) -> np.ndarray:
        grads = self.base.grad(X)
        if self.precision == 0.0:
            return grads
        return grads + self.precision * X


def make_annealed_stage(base: TargetPotential, sigma2: float) -> AnnealStagePotential:
    """Stage potential at temperature sigma2 (inf allowed)."""
    return AnnealStagePotential(base, sigma2)
