"""Build potentials from run-config target specs."""
import json
import logging

from logz.core.exceptions import ConfigException
from logz.models.config import TargetSpec
from logz.models.hardness import HardInstance
from logz.potentials.base import TargetPotential
from logz.potentials.quadratic import make_diag_quadratic, make_gaussian

logger = logging.getLogger(__name__)


def load_instance(path: str) -> HardInstance:
    """Read a hard instance written by hardgen."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return HardInstance.model_validate(json.load(handle))
    except OSError as e:
        raise ConfigException(f"Cannot read instance file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigException(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    except ValueError as e:
        raise ConfigException(f"Invalid instance file {path}: {e}") from e


def build_target(spec: TargetSpec) -> TargetPotential:
    """
    Potential for a named target.

    Args:
        spec: Validated target spec

    Returns:
        TargetPotential
    """
    from logz.hardness.instance import HardInstancePotential

    if spec.name == "gaussian":
        potential = make_gaussian(spec.d, spec.sigma2)
    elif spec.name == "diag_quadratic":
        potential = make_diag_quadratic(spec.lambdas)
    else:
        instance = spec.instance if spec.instance is not None else load_instance(spec.instance_path)
        potential = HardInstancePotential(instance)

    logger.debug(f"Built target {potential.describe()}")
    return potential
