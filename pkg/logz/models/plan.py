"""Multilevel plan and estimate schemas."""
import math
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, Field, computed_field, field_validator, model_validator
from scipy import optimize

from logz.core.exceptions import ValidationException


class VarianceModel(BaseModel):
    """
    Mean-square coupling gap model F(eta) = sum_m A_m eta^beta_m.

    Example:
        >>> model = VarianceModel(terms=[(1.0, 2.0)])
        >>> model.evaluate(0.5)
        0.25
    """
    terms: List[Tuple[float, float]] = Field(..., min_length=1)

    @field_validator("terms")
    @classmethod
    def validate_terms(cls, v: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
        """
        Validate coefficients and exponents.

        Args:
            v: (coefficient, exponent) pairs

        Returns:
            The pairs as floats

        Raises:
            ValueError: On a negative coefficient, an exponent <= 1 or an all-zero model
        """
        cleaned = []
        for coefficient, exponent in v:
            if not math.isfinite(coefficient) or coefficient < 0:
                raise ValueError(f"coefficients must be finite and >= 0, got {coefficient}")
            if not exponent > 1:
                raise ValueError(f"exponents must be > 1, got {exponent}")
            cleaned.append((float(coefficient), float(exponent)))
        if not any(c > 0 for c, _ in cleaned):
            raise ValueError("at least one coefficient must be positive")
        return cleaned

    def evaluate(self, eta: float) -> float:
        """F(eta)."""
        if eta <= 0:
            return 0.0
        return sum(c * eta ** b for c, b in self.terms)

    def solve(self, target: float, eta_max: float) -> float:
        """
        Largest eta <= eta_max with F(eta) <= target.

        A single positive term is inverted in closed form; otherwise F is
        bisected on (0, eta_max] to 1e-9 relative tolerance.
        """
        if target <= 0 or eta_max <= 0:
            raise ValidationException("target and eta_max must be positive")
        if self.evaluate(eta_max) <= target:
            return float(eta_max)

        positive = [(c, b) for c, b in self.terms if c > 0]
        if len(positive) == 1:
            c, b = positive[0]
            return float(min((target / c) ** (1.0 / b), eta_max))

        lower = eta_max
        while self.evaluate(lower) > target:
            lower /= 2.0
        return float(
            optimize.bisect(
                lambda eta: self.evaluate(eta) - target,
                lower,
                min(2.0 * lower, eta_max),
                rtol=1e-9,
                xtol=1e-300,
            )
        )


class LevelPlan(BaseModel):
    """MLMC geometry: step sizes, sample counts and the shared horizon."""
    eta0: float = Field(..., gt=0)
    k: int = Field(..., ge=0)
    Ns: List[int]
    T: float = Field(..., ge=0)
    eps_b: float = Field(..., gt=0)
    eps_sigma: float = Field(..., gt=0)
    L_g: float = Field(..., ge=0)
    grad_cost_per_step: int = Field(default=1, ge=1)
    capped: bool = False

    @model_validator(mode="after")
    def validate_levels(self) -> "LevelPlan":
        """One sample count per level, all positive."""
        if len(self.Ns) != self.k + 1:
            raise ValueError(f"expected {self.k + 1} sample counts, got {len(self.Ns)}")
        if any(n < 1 for n in self.Ns):
            raise ValueError("sample counts must be >= 1")
        return self

    @computed_field
    @property
    def etas(self) -> List[float]:
        return [self.eta0 / 2 ** j for j in range(self.k + 1)]

    def report_block(self) -> Dict[str, Any]:
        """Plan fields of the JSON report."""
        return {
            "eta0": self.eta0,
            "k": self.k,
            "Ns": list(self.Ns),
            "T": self.T,
            "eps_b": self.eps_b,
            "eps_sigma": self.eps_sigma,
            "L_g": self.L_g,
            "capped": self.capped,
        }


class LevelSummary(BaseModel):
    """Per-level mean and sample variance of the telescoping terms."""
    level: int = Field(..., ge=0)
    n: int = Field(..., ge=1)
    mean: float
    variance: float = Field(..., ge=0)


class MlmcEstimate(BaseModel):
    """Telescoped estimate with its per-level statistics."""
    r_hat: float
    levels: List[LevelSummary]
    queries: int = Field(..., ge=0)

    @property
    def estimator_variance(self) -> float:
        """sum_j Var_j / N_j."""
        return sum(level.variance / level.n for level in self.levels)

    def report_block(self, plan: LevelPlan) -> Dict[str, Any]:
        """{eta0, k, Ns, T, r_hat, level_variances, queries}."""
        block = plan.report_block()
        block.update(
            {
                "r_hat": self.r_hat,
                "level_means": [level.mean for level in self.levels],
                "level_variances": [level.variance for level in self.levels],
                "queries": self.queries,
            }
        )
        return block
