"""Base class for gradient-oracle potentials."""
import threading
from abc import ABC, abstractmethod
from typing import Optional, Tuple

import numpy as np

from logz.core.exceptions import ValidationException
from logz.utils.helpers import as_points


class QueryCounter:
    """Thread-safe value/gradient query counters."""

    def __init__(self):
        self._lock = threading.Lock()
        self._value_queries = 0
        self._grad_queries = 0

    @property
    def value_queries(self) -> int:
        return self._value_queries

    @property
    def grad_queries(self) -> int:
        return self._grad_queries

    def add_values(self, count: int = 1) -> None:
        with self._lock:
            self._value_queries += count

    def add_grads(self, count: int = 1) -> None:
        with self._lock:
            self._grad_queries += count

    def snapshot(self) -> Tuple[int, int]:
        """(value_queries, grad_queries) read atomically."""
        with self._lock:
            return self._value_queries, self._grad_queries


class TargetPotential(ABC):
    """
    Abstract base class for mu-strongly convex, L-smooth potentials f.

    value() and grad() accept a single point of shape (d,) or a batch of
    shape (n, d). Subclasses implement the batched kernels.
    """

    name: str = "custom"

    def __init__(self, d: int, mu: float, L: float, minimizer: Optional[np.ndarray] = None):
        """Initialize the potential metadata."""
        if d < 1:
            raise ValidationException(f"Dimension must be >= 1, got {d}")
        if not mu > 0:
            raise ValidationException(f"mu must be > 0, got {mu}")
        if not L >= mu:
            raise ValidationException(f"L must be >= mu, got L={L}, mu={mu}")
        self.d = int(d)
        self.mu = float(mu)
        self.L = float(L)
        if minimizer is None:
            minimizer = np.zeros(self.d)
        self.minimizer = np.asarray(minimizer, dtype=float)
        if self.minimizer.shape != (self.d,):
            raise ValidationException(f"Minimizer must have shape ({self.d},)")

    @property
    def kappa(self) -> float:
        return self.L / self.mu

    @abstractmethod
    def _values(self, X: np.ndarray) -> np.ndarray:
        """
        Evaluate f on each row.

        Args:
            X: Points of shape (n, d)

        Returns:
            Values of shape (n,)
        """
        pass

    @abstractmethod
    def _grads(self, X: np.ndarray) -> np.ndarray:
        """
        Evaluate grad f on each row.

        Args:
            X: Points of shape (n, d)

        Returns:
            Gradients of shape (n, d)
        """
        pass

    def value(self, x):
        """f at a point (float) or at each row of a batch."""
        X = as_points(x, self.d)
        out = self._values(X)
        return float(out[0]) if np.ndim(x) == 1 else out

    def grad(self, x) -> np.ndarray:
        """grad f at a point or at each row of a batch."""
        X = as_points(x, self.d)
        out = self._grads(X)
        return out[0] if np.ndim(x) == 1 else out

    def log_z_exact(self) -> Optional[float]:
        """log Z when a closed form exists."""
        return None

    def describe(self) -> dict:
        return {"name": self.name, "d": self.d, "mu": self.mu, "L": self.L}


class CountingPotential(TargetPotential):
    """Forwards to an inner potential and counts one query per evaluated point."""

    def __init__(self, inner: TargetPotential, counter: Optional[QueryCounter] = None):
        super().__init__(inner.d, inner.mu, inner.L, inner.minimizer)
        self.inner = inner
        self.name = inner.name
        self.counter = counter or QueryCounter()

    def _values(self, X: np.ndarray) -> np.ndarray:
        self.counter.add_values(X.shape[0])
        return self.inner._values(X)

    def _grads(self, X: np.ndarray) -> np.ndarray:
        self.counter.add_grads(X.shape[0])
        return self.inner._grads(X)

    def log_z_exact(self) -> Optional[float]:
        return self.inner.log_z_exact()

    def describe(self) -> dict:
        return self.inner.describe()


def wrap_counting(p: TargetPotential) -> CountingPotential:
    """Wrap p with a fresh QueryCounter."""
    return CountingPotential(p)
