"""Helper utility functions."""
import math
from typing import Iterable, Optional, Sequence

import numpy as np

from logz.core.exceptions import ValidationException

CEIL_TOLERANCE = 1e-9


def ceil_tol(value: float, tol: float = CEIL_TOLERANCE) -> int:
    """Ceiling that ignores floating-point noise just above an integer."""
    if not math.isfinite(value):
        raise ValidationException(f"Cannot take the ceiling of {value}")
    nearest = round(value)
    if abs(value - nearest) <= tol * max(1.0, abs(value)):
        return int(nearest)
    return int(math.ceil(value))


def num_steps(T: float, eta: float) -> int:
    """
    Number of steps of size eta covering horizon T.

    T = 0 means no steps; any positive T shorter than eta runs one step.
    """
    if eta <= 0:
        raise ValidationException(f"Step size must be positive, got {eta}")
    if T < 0:
        raise ValidationException(f"Horizon must be non-negative, got {T}")
    if T == 0:
        return 0
    return max(1, ceil_tol(T / eta))


def round_up_to_multiple(T: float, eta: float) -> float:
    """Smallest positive multiple of eta that is at least T."""
    return max(1, num_steps(T, eta)) * eta


def is_multiple(T: float, eta: float, rtol: float = 1e-6) -> bool:
    """Whether T is an integer multiple of eta up to a relative tolerance."""
    ratio = T / eta
    return abs(ratio - round(ratio)) <= rtol * max(1.0, ratio)


def stable_mean(values: Sequence[float]) -> float:
    """
    Mean with a shift by the first element and exact summation.

    A constant sequence returns that constant bit-exactly.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValidationException("Mean of an empty sample")
    shift = float(values[0])
    return shift + math.fsum((values - shift).tolist()) / values.size


def sample_variance(values: Sequence[float]) -> float:
    """Unbiased sample variance; zero for a single sample."""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return 0.0
    return float(np.var(values, ddof=1))


def accumulate_log(terms: Iterable[float], start: float = 0.0) -> float:
    """Sum log-domain factors in the given order."""
    total = start
    for term in terms:
        total += term
    return total


def format_float(value: Optional[float]) -> str:
    """Round-trip exact decimal text for CSV output."""
    if value is None:
        return ""
    return format(float(value), ".17g")


def norm_rows(x: np.ndarray) -> np.ndarray:
    """Euclidean norm of each row of a 2-d array."""
    return np.sqrt(np.einsum("ij,ij->i", x, x))


def as_points(x, d: int) -> np.ndarray:
    """Coerce a point or batch of points to shape (n, d)."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != d:
        raise ValidationException(f"Expected points of dimension {d}, got shape {np.shape(x)}")
    return arr
