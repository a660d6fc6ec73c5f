"""Trapezoid-rule normalizing constants in dimension at most three."""
import logging
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel
from scipy import integrate

from logz.core.config import get_settings
from logz.core.exceptions import ValidationException
from logz.potentials.base import TargetPotential
from logz.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

MAX_DIMENSION = 3
INITIAL_POINTS = 17


class QuadratureResult(BaseModel):
    """Trapezoid estimate of Z on the box [x* - R0, x* + R0]^d."""
    d: int
    R0: float
    h: float
    points_per_axis: int
    z: float
    log_z: float
    converged: bool
    status: str  # converged | unconverged | fixed


def box_radius(d: int, mu: float, eps: float) -> float:
    """R0 = 2 sqrt(d/mu) log(1/eps)."""
    return 2 * math.sqrt(d / mu) * math.log(1 / eps)


def trapezoid_on_grid(f: TargetPotential, R0: float, n: int, threads: Optional[int] = None) -> float:
    """
    Trapezoid rule for int exp(-f) over the box with n points per axis.

    The grid is swept in slabs along the first axis; each slab is reduced
    over the remaining axes, then the slab sums are integrated in order.
    """
    d = f.d
    if d > MAX_DIMENSION:
        raise ValidationException(f"Quadrature supports d <= {MAX_DIMENSION}, got {d}")
    if n < 2:
        raise ValidationException("Need at least two points per axis")
    axis = np.linspace(-R0, R0, n)
    center = f.minimizer
    if d == 1:
        values = np.exp(-np.asarray(f.value((axis + center[0])[:, None]), dtype=float))
        return float(integrate.trapezoid(values, axis))

    rest = np.stack(np.meshgrid(*([axis] * (d - 1)), indexing="ij"), axis=-1).reshape(-1, d - 1)

    def slab(x0: float) -> float:
        points = np.column_stack([np.full(rest.shape[0], x0), rest]) + center
        values = np.exp(-np.asarray(f.value(points), dtype=float)).reshape((n,) * (d - 1))
        for _ in range(d - 1):
            values = integrate.trapezoid(values, axis, axis=-1)
        return float(values)

    slabs = np.asarray(ordered_map(slab, list(axis), threads=threads))
    return float(integrate.trapezoid(slabs, axis))


def trapezoid_Z(
    f: TargetPotential,
    eps: float,
    h_override: Optional[float] = None,
    max_points: Optional[int] = None,
) -> QuadratureResult:
    """
    Normalizing constant by the trapezoid rule.

    Starting from 17 points per axis, the spacing is halved until two
    successive estimates differ by less than eps/4 relative. Exhausting the
    total point budget returns the finest estimate flagged unconverged.

    Args:
        f: Potential with d <= 3
        eps: Accuracy; also sets the box radius
        h_override: Fixed spacing (no refinement)
        max_points: Total grid point budget (settings.QUADRATURE_MAX_POINTS)

    Returns:
        QuadratureResult
    """
    d = f.d
    if d > MAX_DIMENSION:
        raise ValidationException(f"Quadrature supports d <= {MAX_DIMENSION}, got {d}")
    if not 0 < eps < 1:
        raise ValidationException(f"eps must be in (0, 1), got {eps}")
    if max_points is None:
        max_points = get_settings().QUADRATURE_MAX_POINTS
    R0 = box_radius(d, f.mu, eps)

    def result(z: float, n: int, status: str) -> QuadratureResult:
        return QuadratureResult(
            d=d, R0=R0, h=2 * R0 / (n - 1), points_per_axis=n, z=z,
            log_z=math.log(z), converged=status != "unconverged", status=status,
        )

    if h_override is not None:
        if not h_override > 0:
            raise ValidationException(f"h must be positive, got {h_override}")
        n = int(math.ceil(2 * R0 / h_override)) + 1
        return result(trapezoid_on_grid(f, R0, n), n, "fixed")

    n = INITIAL_POINTS
    previous = trapezoid_on_grid(f, R0, n)
    while True:
        finer = 2 * n - 1
        if finer ** d > max_points:
            logger.warning(f"Quadrature point budget {max_points} exhausted at {n} points per axis")
            return result(previous, n, "unconverged")
        current = trapezoid_on_grid(f, R0, finer)
        n = finer
        if abs(current - previous) < (eps / 4) * abs(current):
            logger.debug(f"Quadrature converged at {n} points per axis: Z={current:.10g}")
            return result(current, n, "converged")
        previous = current
