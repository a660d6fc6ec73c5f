"""Annealing ladder, error budget and truncated ratio schemas."""
import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from logz.core.exceptions import ValidationException


class AnnealSchedule(BaseModel):
    """
    Temperature ladder sigma_1^2 < ... < sigma_M^2.

    Stages are numbered 1..M. Stage i targets Z_{i+1}/Z_i; stage M tilts to
    sigma_{M+1} = infinity, i.e. to the base potential itself.
    """
    sigma1_sq: float = Field(..., gt=0)
    alpha: float = Field(..., gt=0)
    M: int = Field(..., ge=1)
    sigmas_sq: List[float]
    sigma_max_sq: float = Field(..., gt=0)
    nominal_M: int = Field(..., ge=1)
    capped: bool = False

    @model_validator(mode="after")
    def validate_ladder(self) -> "AnnealSchedule":
        """Ladder length matches M and is strictly increasing."""
        if len(self.sigmas_sq) != self.M:
            raise ValueError(f"expected {self.M} ladder entries, got {len(self.sigmas_sq)}")
        if any(b <= a for a, b in zip(self.sigmas_sq, self.sigmas_sq[1:])):
            raise ValueError("ladder must be strictly increasing")
        return self

    def _check_stage(self, i: int) -> None:
        if not 1 <= i <= self.M:
            raise ValidationException(f"stage must be in 1..{self.M}, got {i}")

    def sigma_sq(self, i: int) -> float:
        """sigma_i^2."""
        self._check_stage(i)
        return self.sigmas_sq[i - 1]

    def next_sigma_sq(self, i: int) -> Optional[float]:
        """sigma_{i+1}^2, or None for the last stage (infinite temperature cap)."""
        self._check_stage(i)
        return self.sigmas_sq[i] if i < self.M else None

    def is_last(self, i: int) -> bool:
        return i == self.M

    def g_coefficient(self, i: int) -> float:
        """a_i with g_i(x) = exp(a_i ||x||^2) = exp((1/sigma_i^2 - 1/sigma_{i+1}^2) ||x||^2 / 2)."""
        nxt = self.next_sigma_sq(i)
        inv_next = 0.0 if nxt is None else 1.0 / nxt
        return 0.5 * (1.0 / self.sigma_sq(i) - inv_next)

    def alpha_eff(self, i: int) -> Optional[float]:
        """Ladder multiplier used by stage i; None stands for infinity."""
        self._check_stage(i)
        return None if self.is_last(i) else self.alpha


class ErrorBudget(BaseModel):
    """
    Split of the total relative error eps across M stages.

    eps1 bounds the starting normalizer, eps_b and eps_sigma are the per-stage
    MLMC bias and standard-deviation budgets (relative to R_i), and
    (eps1, eps2, eps3) are the parts checked by the combine certificate.
    """
    eps: float = Field(..., gt=0)
    M: int = Field(..., ge=1)

    @property
    def eps1(self) -> float:
        return self.eps / 8

    @property
    def eps_b(self) -> float:
        return self.eps / (16 * self.M)

    @property
    def eps_sigma(self) -> float:
        return self.eps / (128 * math.sqrt(self.M))

    @property
    def eps2(self) -> float:
        return self.eps / 4

    @property
    def eps3(self) -> float:
        return self.eps / 4

    @property
    def eps_parts(self) -> Tuple[float, float, float]:
        return (self.eps1, self.eps2, self.eps3)

    @property
    def truncation_budget(self) -> float:
        """Relative truncation bias allowed per stage; with eps_b it fills eps2/(2M)."""
        return self.eps2 / (2 * self.M) - self.eps_b


class TruncatedRatio(BaseModel):
    """
    h(x) = min(g(x), cap) with g(x) = exp(a ||x||^2).

    The cap is kept as log_cap = a r_plus^2 so it never overflows.

    Example:
        >>> ratio = TruncatedRatio(stage=1, sigma_sq=1.0, coefficient=0.25, r_plus=2.0, L_h=1.0)
        >>> float(ratio(np.zeros(3)))
        1.0
    """
    stage: int = Field(..., ge=1)
    sigma_sq: float = Field(..., gt=0)
    coefficient: float = Field(..., ge=0)
    r_plus: float = Field(..., ge=0)
    L_h: float = Field(..., ge=0)
    alpha_eff: Optional[float] = None

    @property
    def log_cap(self) -> float:
        return self.coefficient * self.r_plus ** 2

    @property
    def cap(self) -> float:
        return math.exp(self.log_cap)

    @property
    def lipschitz(self) -> float:
        """Exact Lipschitz constant g'(r_plus) = 2 a r_plus cap."""
        return 2.0 * self.coefficient * self.r_plus * self.cap

    def log_value(self, x) -> np.ndarray:
        """log h at one point or each row of a batch."""
        arr = np.asarray(x, dtype=float)
        sq = np.sum(arr * arr, axis=-1)
        return np.minimum(self.coefficient * sq, self.log_cap)

    def __call__(self, x) -> np.ndarray:
        return np.exp(self.log_value(x))

    def untruncated(self, x) -> np.ndarray:
        """g itself."""
        arr = np.asarray(x, dtype=float)
        return np.exp(self.coefficient * np.sum(arr * arr, axis=-1))
