"""Base types and abstract sampler for underdamped Langevin chains."""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np

from logz.core.config import Settings, get_settings
from logz.core.exceptions import SamplerFailureException, ValidationException
from logz.core.rng import RngLike
from logz.models.plan import VarianceModel
from logz.potentials.base import TargetPotential
from logz.utils.helpers import is_multiple, num_steps

GAMMA = 2.0


@dataclass
class PhasePoint:
    """Position and velocity of one chain, or of a batch of chains row-wise."""
    x: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        if self.x.shape != self.v.shape:
            raise ValidationException(f"Position {self.x.shape} and velocity {self.v.shape} shapes differ")

    @classmethod
    def at_rest(cls, x0) -> "PhasePoint":
        x = np.array(x0, dtype=float)
        return cls(x, np.zeros_like(x))


@dataclass(frozen=True)
class GHPair:
    """
    G = int e^{2u} dB_u and H = int dB_u over an interval of length s.

    interval may be an array of shape (n, 1) when every chain has its own length.
    """
    g: np.ndarray
    h: np.ndarray
    interval: Union[float, np.ndarray]


@dataclass(frozen=True)
class UldParams:
    """Step size and horizon; friction gamma = 2 and inverse mass u = 1/L are fixed."""
    eta: float
    T: float
    L: float

    def __post_init__(self):
        if not self.eta > 0:
            raise ValidationException(f"Step size must be positive, got {self.eta}")
        if self.T < 0:
            raise ValidationException(f"Horizon must be non-negative, got {self.T}")
        if not self.L > 0:
            raise ValidationException(f"L must be positive, got {self.L}")

    @property
    def gamma(self) -> float:
        return GAMMA

    @property
    def u(self) -> float:
        return 1.0 / self.L

    @property
    def steps(self) -> int:
        return num_steps(self.T, self.eta)


@dataclass
class CoupledPair:
    """Endpoints of the step-eta/2 (fine) and step-eta (coarse) chains on one Brownian path."""
    x_fine: np.ndarray
    x_coarse: np.ndarray
    eta: float

    def gap_sq(self) -> np.ndarray:
        diff = np.atleast_2d(self.x_fine - self.x_coarse)
        return np.einsum("ij,ij->i", diff, diff)


StepCallback = Callable[[float, PhasePoint], None]


def checked_grad(stage: TargetPotential, X: np.ndarray) -> np.ndarray:
    """Batched gradient that fails loudly on non-finite entries."""
    grads = stage.grad(X)
    finite = np.isfinite(grads)
    if not np.all(finite):
        row = int(np.argmin(np.all(finite, axis=-1)))
        raise SamplerFailureException(
            f"Non-finite gradient at chain {row}",
            row=row,
            position=np.atleast_2d(X)[row].tolist(),
        )
    return grads


def check_dimension(stage: TargetPotential, X: np.ndarray) -> None:
    if X.shape[-1] != stage.d:
        raise ValidationException(f"Chain dimension {X.shape[-1]} does not match potential dimension {stage.d}")


def coupled_steps(eta: float, T: float) -> int:
    """Coarse steps of a coupled run; T must be a multiple of eta unless T < eta."""
    if T > eta and not is_multiple(T, eta):
        raise ValidationException(f"Horizon {T} is not a multiple of the coarse step {eta}")
    return num_steps(T, eta)


class LangevinSampler(ABC):
    """
    Abstract base class for synchronously coupled Langevin samplers.

    A concrete sampler provides single and coupled runs, its epsilon-driven
    parameter setter, its mixing time and the variance model of its coupled
    differences.
    """

    family: str = ""
    grad_cost_per_step: int = 1

    def __init__(self, settings: Optional[Settings] = None):
        """Initialize sampler with settings."""
        self.settings = settings or get_settings()

    @abstractmethod
    def run(
        self,
        stage: TargetPotential,
        x0: np.ndarray,
        eta: float,
        T: float,
        rng: RngLike,
        on_step: Optional[StepCallback] = None,
    ) -> PhasePoint:
        """
        Advance chains started at (x0, 0) over horizon T.

        Args:
            stage: Potential to sample
            x0: Start positions, shape (d,) or (n, d)
            eta: Step size
            T: Horizon
            rng: Random stream or generator
            on_step: Optional callback receiving (t, state) after every step

        Returns:
            Final phase point
        """
        pass

    @abstractmethod
    def run_coupled(
        self,
        stage: TargetPotential,
        x0: np.ndarray,
        eta: float,
        T: float,
        rng: RngLike,
    ) -> CoupledPair:
        """Fine (eta/2) and coarse (eta) chains on a shared Brownian path."""
        pass

    @abstractmethod
    def mixing_time(self, stage: TargetPotential, eps: float) -> float:
        """Horizon after which the chain is eps-close in W2."""
        pass

    @abstractmethod
    def accuracy_params(self, stage: TargetPotential, eps: float) -> Tuple[float, float]:
        """(eta, T) reaching W2 accuracy eps."""
        pass

    @abstractmethod
    def variance_model(self, stage: TargetPotential, L_g: float, eps_b: float) -> VarianceModel:
        """Model of E||x_fine - x_coarse||^2 as a function of the coarse step."""
        pass

    def eta_max(self, stage: TargetPotential) -> float:
        """Largest admissible coarse step."""
        return self.settings.ETA_MAX_FACTOR / stage.kappa

    def chain_cost(self, eta: float, T: float) -> int:
        """Gradient queries of one single chain."""
        return self.grad_cost_per_step * num_steps(T, eta)

    def coupled_cost(self, eta: float, T: float) -> int:
        """Gradient queries of one coupled pair: two fine steps and one coarse step per coarse step."""
        return self.grad_cost_per_step * 3 * coupled_steps(eta, T)

    def _start(self, stage: TargetPotential, x0) -> PhasePoint:
        state = PhasePoint.at_rest(x0)
        check_dimension(stage, state.x)
        return state
