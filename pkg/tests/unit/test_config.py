"""Unit tests for settings and the command providers."""
import pytest
from pydantic import ValidationError

from logz.annealing import AnnealingPipeline, MalaAnnealingPipeline
from logz.core.config import Settings, get_settings, get_settings_dict
from logz.core.dependencies import get_estimator, get_run_seed, get_run_settings
from logz.core.exceptions import ConfigException, ValidationException


@pytest.mark.unit
def test_default_settings(settings):
    """Test documented defaults."""
    assert settings.APP_NAME == "logz"
    assert settings.CF == 4.0
    assert settings.ULD_VARIANCE_CONSTANT == 2662.4
    assert settings.ETA_MAX_FACTOR == 0.1
    assert settings.LIPSCHITZ_MODE == "budget"
    assert settings.THREADS == 1
    assert settings.MAX_STAGES is None
    assert settings.QUADRATURE_MAX_POINTS == 2 ** 24


@pytest.mark.unit
def test_settings_cached():
    """Test that get_settings returns the cached instance."""
    assert get_settings() is get_settings()
    assert get_settings_dict()["APP_NAME"] == "logz"


@pytest.mark.unit
def test_settings_from_environment(monkeypatch):
    """Test environment loading and validation."""
    monkeypatch.setenv("CF", "2.5")
    monkeypatch.setenv("LOG_LEVEL", "debug")
    settings = Settings()
    assert settings.CF == 2.5
    assert settings.LOG_LEVEL == "DEBUG"


@pytest.mark.unit
def test_invalid_settings_rejected():
    """Test field validators."""
    with pytest.raises(ValidationError):
        Settings(LIPSCHITZ_MODE="loose")
    with pytest.raises(ValidationError):
        Settings(CF=0.0)
    with pytest.raises(ValidationError):
        Settings(THREADS=0)
    with pytest.raises(ValidationError):
        Settings(LOG_LEVEL="LOUD")


@pytest.mark.unit
def test_with_overrides_copies(settings):
    """Test overrides return a new validated copy and skip None values."""
    updated = settings.with_overrides(cf=8.0, max_stages=3, max_levels=None)
    assert updated.CF == 8.0
    assert updated.MAX_STAGES == 3
    assert updated.MAX_LEVELS is None
    assert settings.CF == 4.0
    assert settings.with_overrides(cf=None) is settings


@pytest.mark.unit
def test_with_overrides_unknown_field(settings):
    """Test unknown override names."""
    with pytest.raises(ValueError, match="Unknown settings"):
        settings.with_overrides(warp_speed=9)


@pytest.mark.unit
def test_run_settings_and_threads():
    """Test the per-run settings provider."""
    settings = get_run_settings({"max_stages": 2, "cf": None}, threads=3)
    assert settings.MAX_STAGES == 2
    assert settings.THREADS == 3
    assert get_settings().THREADS == 1


@pytest.mark.unit
def test_run_settings_invalid_override():
    """Test invalid overrides surface as configuration errors."""
    with pytest.raises(ConfigException):
        get_run_settings({"cf": -1.0})


@pytest.mark.unit
def test_seed_override(monkeypatch):
    """Test LOGZ_SEED precedence over the config seed."""
    assert get_run_seed(7, get_settings()) == 7
    monkeypatch.setenv("LOGZ_SEED", "11")
    get_settings.cache_clear()
    assert get_run_seed(7, get_settings()) == 11


@pytest.mark.unit
def test_get_estimator(settings):
    """Test method dispatch."""
    assert isinstance(get_estimator("mala", settings), MalaAnnealingPipeline)
    pipeline = get_estimator("mlmc-rmm", settings)
    assert isinstance(pipeline, AnnealingPipeline)
    assert pipeline.method == "mlmc-rmm"
    with pytest.raises(ValidationException):
        get_estimator("mcmc", settings)
