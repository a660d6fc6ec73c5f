"""Shared providers for the command handlers: settings, seeds and estimators."""
import logging
from typing import Any, Dict, Optional

from logz.core.config import Settings, get_settings
from logz.core.exceptions import ConfigException, ValidationException

logger = logging.getLogger(__name__)


def get_run_settings(
    overrides: Optional[Dict[str, Any]] = None,
    threads: Optional[int] = None,
) -> Settings:
    """
    Settings for one run: the cached environment settings with per-run overrides.

    Args:
        overrides: Lower-case field overrides from a run or bench config
        threads: Value of the global --threads flag

    Returns:
        A new Settings instance (the cached one is never mutated)

    Raises:
        ConfigException: If an override is unknown or invalid
    """
    update = dict(overrides or {})
    if threads is not None:
        update["threads"] = threads
    try:
        return get_settings().with_overrides(**update)
    except ValueError as e:
        raise ConfigException(f"Invalid settings override: {e}") from e


def get_run_seed(config_seed: int, settings: Settings) -> int:
    """LOGZ_SEED wins over the config seed when set."""
    if settings.LOGZ_SEED is not None:
        if settings.LOGZ_SEED != config_seed:
            logger.info(f"LOGZ_SEED={settings.LOGZ_SEED} overrides config seed {config_seed}")
        return settings.LOGZ_SEED
    return config_seed


def get_estimator(method: str, settings: Settings):
    """
    Pipeline object for a method name.

    Both pipelines expose run(base, eps, rng, config) -> RunReport.

    Raises:
        ValidationException: On an unknown method
    """
    from logz.annealing import AnnealingPipeline, MalaAnnealingPipeline

    if method == "mala":
        return MalaAnnealingPipeline(settings)
    if method in ("mlmc-uld", "mlmc-rmm"):
        return AnnealingPipeline(method, settings)
    raise ValidationException(f"Unknown method: {method}")

