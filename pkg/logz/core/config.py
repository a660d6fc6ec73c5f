"""
Configuration settings for logz.

This module loads and validates environment variables into a Settings object.
Every numerical constant the estimators use lives here, so a run is fully
described by (settings, config, seed).

Environment variables can be set in .env file or via system environment.
Per-run overrides come from the JSON run config (see logz.models.config) and
are applied with ``Settings.model_copy(update=...)``, never in place.
"""

from pydantic_settings import BaseSettings
from pydantic import Field, field_validator
from typing import Optional
from functools import lru_cache
import logging

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """
    Library and CLI settings loaded from environment variables.

    Desk-scale caps default to None, which reproduces the estimator formulas
    uncapped. Any cap that binds during a run stamps the report as
    budget-capped.

    Example:
        >>> settings = get_settings()
        >>> settings.CF
        4.0
    """

    # ==================== APPLICATION SETTINGS ====================
    APP_NAME: str = Field(default="logz", description="Application name")
    APP_VERSION: str = Field(default="1.0.0", description="Application version")
    LOG_LEVEL: str = Field(
        default="INFO",
        description="Console log level: DEBUG, INFO, WARNING or ERROR"
    )
    LOG_FILE: Optional[str] = Field(
        default=None,
        description="Optional rotating log file path"
    )

    # ==================== EXECUTION ====================
    LOGZ_SEED: Optional[int] = Field(
        default=None,
        description="Overrides the seed of every run config when set"
    )
    THREADS: int = Field(
        default=1,
        description="Worker threads for independent chain blocks"
    )
    BLOCK_SIZE: int = Field(
        default=256,
        description="Chains per work item; fixes the RNG path layout"
    )

    # ==================== SAMPLER CONSTANTS ====================
    ULD_VARIANCE_CONSTANT: float = Field(
        default=2662.4,
        description="C in F(eta) = C kappa^2 d/mu eta^2 for coupled ULD"
    )
    RMM_VARIANCE_CONSTANT: float = Field(
        default=1.0,
        description="C in the eta^3/eta^6 variance model of coupled ULD-RMM"
    )
    ETA_MAX_FACTOR: float = Field(
        default=0.1,
        description="Admissible coarse step is ETA_MAX_FACTOR / kappa"
    )
    RMM_STEP_PREFACTOR: float = Field(
        default=0.1,
        description="Prefactor c of the epsilon-driven ULD-RMM step size"
    )
    MALA_STEP_PREFACTOR: float = Field(
        default=0.1,
        description="c in h = c / (L d max(1, sqrt(kappa/d)))"
    )
    MALA_CHAIN_CONSTANT: float = Field(
        default=1.0,
        description="C in n = C d kappa log(d/delta) max(1, sqrt(kappa/d))"
    )

    # ==================== MLMC ====================
    CF: float = Field(
        default=4.0,
        description="Geometric-sum constant C_F of the level sample counts"
    )
    PILOT_SAMPLES: int = Field(
        default=16,
        description="Level-0 pilot chains used to scale relative budgets"
    )
    LIPSCHITZ_MODE: str = Field(
        default="budget",
        description="'budget' (L_h bound) or 'exact' (truncated-ratio Lipschitz constant)"
    )
    MIN_SAMPLES_PER_LEVEL: int = Field(
        default=1,
        description="Floor on every N_j after capping"
    )

    # ==================== DESK-SCALE CAPS ====================
    MAX_STAGES: Optional[int] = Field(default=None, description="Cap on annealing stages M")
    MAX_LEVELS: Optional[int] = Field(default=None, description="Cap on refinement levels k")
    MAX_SAMPLES_PER_LEVEL: Optional[int] = Field(default=None, description="Cap on N_0 (plan rescaled)")
    MAX_RADIUS_SAMPLES: Optional[int] = Field(default=None, description="Cap on radius samples S")
    MAX_RADIUS_STEPS: Optional[int] = Field(default=None, description="Cap on steps of one radius chain (step enlarged to T/cap)")
    MAX_MALA_DRAWS: Optional[int] = Field(default=None, description="Cap on MALA draws K per stage")
    MAX_MALA_STEPS: Optional[int] = Field(default=None, description="Cap on MALA chain length n")

    # ==================== QUADRATURE ====================
    QUADRATURE_MAX_POINTS: int = Field(
        default=2 ** 24,
        description="Total grid point budget of the trapezoid oracle"
    )

    class Config:
        env_file = ".env"
        case_sensitive = True

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """
        Validate the log level name.

        Args:
            v: The level name

        Returns:
            The upper-cased level name

        Raises:
            ValueError: If the level is unknown
        """
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR"}
        if v.upper() not in valid_levels:
            raise ValueError(f"LOG_LEVEL must be one of {valid_levels}")
        return v.upper()

    @field_validator("LIPSCHITZ_MODE")
    @classmethod
    def validate_lipschitz_mode(cls, v: str) -> str:
        """Validate the Lipschitz constant source."""
        if v not in {"budget", "exact"}:
            raise ValueError("LIPSCHITZ_MODE must be 'budget' or 'exact'")
        return v

    @field_validator(
        "THREADS", "BLOCK_SIZE", "MIN_SAMPLES_PER_LEVEL", "QUADRATURE_MAX_POINTS"
    )
    @classmethod
    def validate_positive_int(cls, v: int) -> int:
        """Counts that must be at least one."""
        if v < 1:
            raise ValueError("value must be >= 1")
        return v

    @field_validator(
        "ULD_VARIANCE_CONSTANT",
        "RMM_VARIANCE_CONSTANT",
        "ETA_MAX_FACTOR",
        "RMM_STEP_PREFACTOR",
        "MALA_STEP_PREFACTOR",
        "MALA_CHAIN_CONSTANT",
        "CF",
    )
    @classmethod
    def validate_positive_constant(cls, v: float) -> float:
        """Model constants are strictly positive."""
        if not v > 0:
            raise ValueError("constant must be > 0")
        return v

    @field_validator("PILOT_SAMPLES")
    @classmethod
    def validate_pilot(cls, v: int) -> int:
        """Zero disables the pilot."""
        if v < 0:
            raise ValueError("PILOT_SAMPLES must be >= 0")
        return v

    @field_validator(
        "MAX_STAGES",
        "MAX_LEVELS",
        "MAX_SAMPLES_PER_LEVEL",
        "MAX_RADIUS_SAMPLES",
        "MAX_RADIUS_STEPS",
        "MAX_MALA_DRAWS",
        "MAX_MALA_STEPS",
    )
    @classmethod
    def validate_cap(cls, v: Optional[int]) -> Optional[int]:
        """Caps are None or positive (MAX_LEVELS may be zero)."""
        if v is not None and v < 0:
            raise ValueError("caps must be non-negative")
        return v

    @field_validator("LOGZ_SEED")
    @classmethod
    def validate_seed(cls, v: Optional[int]) -> Optional[int]:
        """Seeds are 64-bit unsigned integers."""
        if v is not None and not 0 <= v < 2 ** 64:
            raise ValueError("LOGZ_SEED must be in [0, 2**64)")
        return v

    def with_overrides(self, **overrides) -> "Settings":
        """
        Return a copy with upper-cased field overrides applied.

        None values are skipped, so an override block with unset keys leaves
        the environment defaults in place. The copy is re-validated.

        Args:
            **overrides: Field names in any case mapped to new values

        Returns:
            A new Settings instance
        """
        update = {k.upper(): v for k, v in overrides.items() if v is not None}
        if not update:
            return self
        unknown = set(update) - set(type(self).model_fields)
        if unknown:
            raise ValueError(f"Unknown settings: {', '.join(sorted(unknown))}")
        merged = {**self.model_dump(), **update}
        return type(self).model_validate(merged)


@lru_cache()
def get_settings() -> Settings:
    """
    Get library settings (cached).

    Returns:
        Settings: The settings object

    Example:
        >>> settings = get_settings()
        >>> settings.APP_NAME
        'logz'
    """
    try:
        settings = Settings()
        logger.debug(f"Settings loaded (threads={settings.THREADS}, block={settings.BLOCK_SIZE})")
        return settings
    except Exception as e:
        logger.error(f"Failed to load settings: {str(e)}")
        raise


def get_settings_dict() -> dict:
    """
    Get settings as dictionary.

    Returns:
        dict: Settings as dictionary
    """
    try:
        settings = get_settings()
        return settings.model_dump()
    except Exception as e:
        logger.error(f"Failed to get settings dict: {str(e)}")
        raise
