"""Run report schemas."""
import math
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from logz.utils.helpers import accumulate_log


def safe_exp(log_value: float) -> Optional[float]:
    """exp that reports overflow as None instead of inf."""
    try:
        return math.exp(log_value)
    except OverflowError:
        return None


class StageRecord(BaseModel):
    """Audit trail of one annealing stage."""
    stage: int = Field(..., ge=1)
    sigma_sq: float
    sigma_next_sq: Optional[float] = None  # None: last stage
    r_hat: Optional[float] = None
    r_plus: Optional[float] = None
    log_ratio: float
    ratio: float
    ratio_variance: float = 0.0
    bias_bound: Optional[float] = None
    truncation_bound: Optional[float] = None
    plan: Optional[Dict[str, Any]] = None
    draws: Optional[int] = None
    predicted_queries: Optional[int] = None
    grad_queries: int = 0
    value_queries: int = 0
    concentration_ok: Optional[bool] = None
    seconds: Optional[float] = None


class CombineCertificate(BaseModel):
    """Outcome of checking the per-stage hypotheses of the error combination."""
    certified: bool
    eps_parts: List[float]
    z1_ok: bool
    bias_ok: List[bool] = []
    variance_ok: List[bool] = []
    bias_thresholds: List[float] = []
    variance_thresholds: List[float] = []


class RunReport(BaseModel):
    """
    Full audit trail of a normalizing-constant run.

    z_hat is exp(log_z_hat); log_z_hat is recomputable from log_z1_hat and the
    recorded stage log-ratios with recompute_log_z().
    """
    method: str
    status: str = "complete"  # complete | failed
    failed_stage: Optional[int] = None
    error: Optional[str] = None
    d: int
    mu: float
    L: float
    eps: float
    seed: int
    M: int
    nominal_M: int
    alpha: float
    sigma1_sq: float
    sigma_max_sq: Optional[float] = None
    log_z1_hat: float
    z1_hat: Optional[float] = None
    log_z_hat: Optional[float] = None
    z_hat: Optional[float] = None
    log_z_exact: Optional[float] = None
    rel_error: Optional[float] = None
    stages: List[StageRecord] = []
    grad_queries: int = 0
    value_queries: int = 0
    predicted_grad_queries: Optional[int] = None
    budget_capped: bool = False
    caps_hit: List[str] = []
    certificate: Optional[CombineCertificate] = None
    config: Dict[str, Any] = {}
    settings: Dict[str, Any] = {}
    wall_time_seconds: Optional[float] = None

    def recompute_log_z(self) -> float:
        """log Z1_hat + sum_i log R_i in stage order."""
        return accumulate_log((s.log_ratio for s in self.stages), start=self.log_z1_hat)

    def finalize(self) -> "RunReport":
        """Fill log_z_hat, z_hat and the relative error from the stage records."""
        self.log_z_hat = self.recompute_log_z()
        self.z_hat = safe_exp(self.log_z_hat)
        self.z1_hat = safe_exp(self.log_z1_hat)
        if self.log_z_exact is not None:
            self.rel_error = abs(math.expm1(self.log_z_hat - self.log_z_exact))
        return self

    def strip_timing(self) -> "RunReport":
        """Copy without wall-clock fields."""
        stripped = self.model_copy(deep=True)
        stripped.wall_time_seconds = None
        for stage in stripped.stages:
            stage.seconds = None
        return stripped
