"""Hard instances: 1.5-smooth, 0.5-strongly convex bump perturbations of ||x||^2/2."""
import logging
import math
from functools import lru_cache
from typing import Literal, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from logz.core.exceptions import NumericalFailureException, ValidationException
from logz.core.rng import RngLike, as_generator
from logz.hardness.polynomial import q_grad, q_hessian, q_value
from logz.models.hardness import HardInstance, integer_root
from logz.potentials.base import TargetPotential

logger = logging.getLogger(__name__)

QUADRATURE_NODES = 64
MAX_QUADRATURE_DIM = 3
EQUALIZE_RTOL = 1e-13


class HardInstancePotential(TargetPotential):
    """
    f(x) = ||x||^2/2 + c_tau q((x - v_tau)/l) on type-2 cells, ||x||^2/2 elsewhere,
    shifted by the center offset so that f(0) = 0 at the minimizer.
    """

    name = "hard_instance"

    def __init__(self, instance: HardInstance):
        super().__init__(instance.k, 0.5, 1.5)
        self.instance = instance
        self.coefficients = np.asarray(instance.coefficients, dtype=float)
        self.l = instance.half_width
        self.radius = instance.cube_radius
        self.m = instance.m
        self.offset = instance.center_offset

    def locate(self, X: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Cell lookup for each row.

        Returns:
            (inside mask, flat cell index, local coordinates in [-1, 1]^k).
            Points on a shared face resolve to the lower-index cell.
        """
        inside = np.all(np.abs(X) <= self.radius, axis=1)
        t = (X + self.radius) / (2.0 * self.l)
        idx = np.clip(np.ceil(t) - 1, 0, self.m - 1).astype(int)
        centers = -self.radius + (2 * idx + 1) * self.l
        local = (X - centers) / self.l
        flat = np.ravel_multi_index(tuple(idx.T), (self.m,) * self.d)
        return inside, flat, local

    def _bumped(self, X: np.ndarray):
        inside, flat, local = self.locate(X)
        c = np.where(inside, self.coefficients[flat], 0.0)
        return c, local

    def _values(self, X: np.ndarray) -> np.ndarray:
        c, local = self._bumped(X)
        values = 0.5 * np.einsum("ij,ij->i", X, X) - self.offset
        active = c > 0
        if np.any(active):
            values[active] += c[active] * q_value(local[active])
        return values

    def _grads(self, X: np.ndarray) -> np.ndarray:
        c, local = self._bumped(X)
        grads = X.copy()
        active = c > 0
        if np.any(active):
            grads[active] += (c[active] / self.l)[:, None] * q_grad(local[active])
        return grads

    def hessian(self, x) -> np.ndarray:
        """Exact Hessian, shape (d, d) or (n, d, d)."""
        X = np.atleast_2d(np.asarray(x, dtype=float))
        c, local = self._bumped(X)
        hess = np.broadcast_to(np.eye(self.d), (X.shape[0], self.d, self.d)).copy()
        active = c > 0
        if np.any(active):
            hess[active] += (c[active] / self.l ** 2)[:, None, None] * q_hessian(local[active])
        return hess[0] if np.ndim(x) == 1 else hess

    def log_z_exact(self) -> Optional[float]:
        if self.d > MAX_QUADRATURE_DIM:
            return None
        return math.log(instance_z(self.instance))

    def describe(self) -> dict:
        info = super().describe()
        info.update({"k": self.instance.k, "n": self.instance.n, "mode": self.instance.mode})
        return info


@lru_cache(maxsize=None)
def _tensor_rule(k: int, nodes: int):
    u, w = np.polynomial.legendre.leggauss(nodes)
    grids = np.meshgrid(*([u] * k), indexing="ij")
    weights = np.meshgrid(*([w] * k), indexing="ij")
    U = np.stack([g.ravel() for g in grids], axis=1)
    W = np.prod(np.stack([g.ravel() for g in weights], axis=1), axis=1)
    return U, W


def cell_center(instance: HardInstance, cell: int) -> np.ndarray:
    idx = np.array(np.unravel_index(cell, (instance.m,) * instance.k), dtype=float)
    return -instance.cube_radius + (2 * idx + 1) * instance.half_width


def cell_mass_decrease(instance: HardInstance, cell: int, c: float, nodes: int = QUADRATURE_NODES) -> float:
    """
    Mass removed from exp(-||x||^2/2) by a bump of height c on one cell.

    D(c) = int_cell exp(-||x||^2/2) (1 - exp(-c q((x - v)/l))) dx, by
    tensor Gauss-Legendre quadrature on the cell.
    """
    if instance.k > MAX_QUADRATURE_DIM:
        raise ValidationException(f"Cell quadrature supports k <= {MAX_QUADRATURE_DIM}")
    if not 0 <= cell < instance.n:
        raise ValidationException(f"Cell index {cell} out of range")
    U, W = _tensor_rule(instance.k, nodes)
    l = instance.half_width
    X = cell_center(instance, cell) + l * U
    base = np.exp(-0.5 * np.einsum("ij,ij->i", X, X))
    bump = -np.expm1(-c * q_value(U))
    return float(l ** instance.k * np.dot(W, base * bump))


def instance_z(instance: HardInstance) -> float:
    """
    Z of the shifted potential: ((2 pi)^(k/2) minus the per-cell mass
    decreases) times exp(center offset).
    """
    z0 = (2 * math.pi) ** (instance.k / 2)
    decrease = math.fsum(
        cell_mass_decrease(instance, tau, instance.coefficients[tau]) for tau in instance.type2_cells
    )
    return (z0 - decrease) * math.exp(instance.center_offset)


def _draw_types(n: int, delta: float, rng: RngLike) -> list:
    if not -0.5 <= delta <= 0.5:
        raise ValidationException(f"delta must be in [-1/2, 1/2], got {delta}")
    draws = as_generator(rng).random(n)
    return [2 if u < 0.5 + delta else 1 for u in draws]


def _equalize(instance: HardInstance, reference: str) -> list:
    c_max = instance.c_max
    cells = instance.type2_cells
    if not cells:
        return list(instance.coefficients)
    pool = cells if reference == "type2" else range(instance.n)
    max_decrease = {tau: cell_mass_decrease(instance, tau, c_max) for tau in pool}
    target = min(max_decrease.values())
    logger.debug(f"Equalizing {len(cells)} cells to decrease {target:.6e}")

    coefficients = list(instance.coefficients)
    for tau in cells:
        top = max_decrease.get(tau)
        if top is None:
            top = cell_mass_decrease(instance, tau, c_max)
        if top < target * (1 - EQUALIZE_RTOL):
            raise NumericalFailureException(f"Cell {tau} cannot reach the equalization target")
        if top <= target:
            coefficients[tau] = c_max
            continue
        coefficients[tau] = float(
            optimize.brentq(
                lambda c: cell_mass_decrease(instance, tau, c) - target,
                0.0,
                c_max,
                xtol=1e-300,
                rtol=EQUALIZE_RTOL,
            )
        )
    return coefficients


def generate(
    k: int,
    n: int,
    types: Optional[Sequence[int]] = None,
    delta: float = 0.0,
    rng: Optional[RngLike] = None,
    mode: Literal["uniform", "equalized"] = "uniform",
    reference: Literal["type2", "all"] = "type2",
) -> HardInstance:
    """
    Build a hard instance.

    Args:
        k: Dimension
        n: Number of cells (a perfect k-th power)
        types: Explicit per-cell types (1 or 2); drawn when omitted
        delta: Type-2 probability is 1/2 + delta when drawing
        rng: Stream for drawing types
        mode: 'uniform' sets every type-2 coefficient to l^2/(72k);
            'equalized' lowers them so every type-2 cell removes the same mass
        reference: Cells whose maximal decrease defines the equalization target

    Returns:
        HardInstance
    """
    if k < 1:
        raise ValidationException(f"k must be >= 1, got {k}")
    if integer_root(n, k) < 0:
        raise ValidationException(f"n={n} is not a perfect {k}-th power")
    if types is None:
        if rng is None:
            raise ValidationException("Either explicit types or an rng is required")
        types = _draw_types(n, delta, rng)
    types = [int(t) for t in types]
    if len(types) != n:
        raise ValidationException(f"Expected {n} cell types, got {len(types)}")

    try:
        draft = HardInstance(
            k=k,
            n=n,
            types=types,
            coefficients=[0.0] * n,
            mode=mode,
        )
    except ValueError as e:
        raise ValidationException(str(e)) from e

    c_max = draft.c_max
    coefficients = [c_max if t == 2 else 0.0 for t in types]
    instance = draft.model_copy(update={"coefficients": coefficients})
    if mode == "equalized":
        instance = instance.model_copy(update={"coefficients": _equalize(instance, reference)})

    logger.info(f"Generated hard instance k={k} n={n} type-2 cells={len(instance.type2_cells)} mode={mode}")
    return instance
