"""Run configuration schemas (JSON files given to the CLI)."""
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from logz.models.hardness import HardInstance

Method = Literal["mlmc-uld", "mlmc-rmm", "mala"]


class TargetSpec(BaseModel):
    """Named built-in target with its parameter block."""
    name: Literal["gaussian", "diag_quadratic", "hard_instance"]
    d: Optional[int] = Field(default=None, ge=1)
    sigma2: Optional[float] = Field(default=None, gt=0)
    lambdas: Optional[List[float]] = None
    instance: Optional[HardInstance] = None
    instance_path: Optional[str] = None

    @model_validator(mode="after")
    def validate_parameters(self) -> "TargetSpec":
        """Each family needs its own parameters."""
        if self.name == "gaussian":
            if self.d is None:
                raise ValueError("gaussian target needs 'd'")
            if self.sigma2 is None:
                self.sigma2 = 1.0
        elif self.name == "diag_quadratic":
            if not self.lambdas:
                raise ValueError("diag_quadratic target needs non-empty 'lambdas'")
            if any(not lam > 0 for lam in self.lambdas):
                raise ValueError("lambdas must be positive")
        elif self.instance is None and self.instance_path is None:
            raise ValueError("hard_instance target needs 'instance' or 'instance_path'")
        return self

    @classmethod
    def for_sweep(cls, d: int, kappa: float) -> "TargetSpec":
        """Benchmark target: isotropic when kappa = 1, else a diagonal quadratic with spectrum in [1, kappa]."""
        if kappa == 1:
            return cls(name="gaussian", d=d, sigma2=1.0)
        if d == 1:
            return cls(name="diag_quadratic", lambdas=[float(kappa)])
        lambdas = [float(kappa ** (j / (d - 1))) for j in range(d)]
        return cls(name="diag_quadratic", lambdas=lambdas)


class ConstantOverrides(BaseModel):
    """Per-run overrides of the numerical constants in Settings."""
    uld_variance_constant: Optional[float] = Field(default=None, gt=0)
    rmm_variance_constant: Optional[float] = Field(default=None, gt=0)
    eta_max_factor: Optional[float] = Field(default=None, gt=0)
    rmm_step_prefactor: Optional[float] = Field(default=None, gt=0)
    mala_step_prefactor: Optional[float] = Field(default=None, gt=0)
    mala_chain_constant: Optional[float] = Field(default=None, gt=0)
    cf: Optional[float] = Field(default=None, gt=0)
    pilot_samples: Optional[int] = Field(default=None, ge=0)
    lipschitz_mode: Optional[Literal["budget", "exact"]] = None
    min_samples_per_level: Optional[int] = Field(default=None, ge=1)
    block_size: Optional[int] = Field(default=None, ge=1)

    class Config:
        extra = "forbid"


class CapOverrides(BaseModel):
    """Desk-scale caps; any cap that binds marks the report as budget-capped."""
    max_stages: Optional[int] = Field(default=None, ge=1)
    max_levels: Optional[int] = Field(default=None, ge=0)
    max_samples_per_level: Optional[int] = Field(default=None, ge=1)
    max_radius_samples: Optional[int] = Field(default=None, ge=1)
    max_radius_steps: Optional[int] = Field(default=None, ge=1)
    max_mala_draws: Optional[int] = Field(default=None, ge=1)
    max_mala_steps: Optional[int] = Field(default=None, ge=1)

    class Config:
        extra = "forbid"


class OutputSpec(BaseModel):
    """Output file locations (relative paths resolve against --output-dir)."""
    report: str = "report.json"
    stages_csv: str = "stages.csv"


class RunConfig(BaseModel):
    """
    One estimation run.

    Example:
        {"target": {"name": "gaussian", "d": 2}, "method": "mlmc-uld",
         "eps": 0.25, "seed": 7}
    """
    target: TargetSpec
    method: Method = "mlmc-uld"
    eps: float = Field(..., gt=0, le=0.5)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    constants: ConstantOverrides = ConstantOverrides()
    caps: CapOverrides = CapOverrides()
    output: OutputSpec = OutputSpec()
    check_tolerance: Optional[float] = Field(default=None, gt=0)

    class Config:
        extra = "forbid"

    def overrides(self) -> Dict[str, Any]:
        """Settings overrides carried by this config."""
        return {**self.constants.model_dump(), **self.caps.model_dump()}


class BenchConfig(BaseModel):
    """Sweep over methods, dimensions, condition numbers, accuracies and seeds."""
    methods: List[Method] = Field(..., min_length=1)
    dims: List[int] = Field(..., min_length=1)
    eps: List[float] = Field(..., min_length=1)
    kappas: List[float] = Field(default=[1.0], min_length=1)
    seeds: List[int] = Field(default=[0], min_length=1)
    constants: ConstantOverrides = ConstantOverrides()
    caps: CapOverrides = CapOverrides()

    class Config:
        extra = "forbid"

    @field_validator("dims")
    @classmethod
    def validate_dims(cls, v: List[int]) -> List[int]:
        if any(d < 1 for d in v):
            raise ValueError("dimensions must be >= 1")
        return v

    @field_validator("eps")
    @classmethod
    def validate_eps(cls, v: List[float]) -> List[float]:
        if any(not 0 < e <= 0.5 for e in v):
            raise ValueError("eps values must be in (0, 0.5]")
        return v

    @field_validator("kappas")
    @classmethod
    def validate_kappas(cls, v: List[float]) -> List[float]:
        if any(k < 1 for k in v):
            raise ValueError("condition numbers must be >= 1")
        return v

    def overrides(self) -> Dict[str, Any]:
        return {**self.constants.model_dump(), **self.caps.model_dump()}


class SampleConfig(BaseModel):
    """Single-chain trace run."""
    sampler: Literal["uld", "rmm", "mala"]
    target: TargetSpec
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    eta: Optional[float] = Field(default=None, gt=0)
    T: Optional[float] = Field(default=None, ge=0)
    h: Optional[float] = Field(default=None, gt=0)
    n: Optional[int] = Field(default=None, ge=0)
    x0: Optional[List[float]] = None

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def validate_sampler_parameters(self) -> "SampleConfig":
        """Langevin samplers need (eta, T); MALA needs (h, n)."""
        if self.sampler in ("uld", "rmm") and (self.eta is None or self.T is None):
            raise ValueError(f"sampler '{self.sampler}' needs 'eta' and 'T'")
        if self.sampler == "mala" and (self.h is None or self.n is None):
            raise ValueError("sampler 'mala' needs 'h' and 'n'")
        return self


class OracleConfig(BaseModel):
    """Target for the quadrature oracle; a full run config is accepted and its other keys ignored."""
    target: TargetSpec

    class Config:
        extra = "ignore"
