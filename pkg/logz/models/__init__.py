"""Data models package."""
from logz.models.plan import (
    VarianceModel,
    LevelPlan,
    LevelSummary,
    MlmcEstimate,
)
from logz.models.schedule import (
    AnnealSchedule,
    ErrorBudget,
    TruncatedRatio,
)
from logz.models.report import (
    StageRecord,
    CombineCertificate,
    RunReport,
)
from logz.models.hardness import (
    HardInstance,
    HardnessReport,
)
from logz.models.config import (
    TargetSpec,
    ConstantOverrides,
    CapOverrides,
    OutputSpec,
    RunConfig,
    BenchConfig,
    SampleConfig,
    OracleConfig,
)

__all__ = [
    "VarianceModel",
    "LevelPlan",
    "LevelSummary",
    "MlmcEstimate",
    "AnnealSchedule",
    "ErrorBudget",
    "TruncatedRatio",
    "StageRecord",
    "CombineCertificate",
    "RunReport",
    "HardInstance",
    "HardnessReport",
    "TargetSpec",
    "ConstantOverrides",
    "CapOverrides",
    "OutputSpec",
    "RunConfig",
    "BenchConfig",
    "SampleConfig",
    "OracleConfig",
]
