"""The bump polynomial p(x) = (1+x)^3 (1-x)^3 and its tensor product q."""
from typing import Tuple

import numpy as np

from logz.core.exceptions import ValidationException

DOMAIN_SLACK = 1e-12


def _check_domain(x: np.ndarray) -> None:
    if np.any(np.abs(x) > 1 + DOMAIN_SLACK):
        raise ValidationException("p is defined on [-1, 1]")


def p_value(x):
    """p(x) = (1 - x^2)^3."""
    x = np.asarray(x, dtype=float)
    _check_domain(x)
    return (1.0 - x * x) ** 3


def p_derivs(x) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(p, p', p'') on [-1, 1]; all three vanish at +-1."""
    x = np.asarray(x, dtype=float)
    _check_domain(x)
    s = 1.0 - x * x
    return s ** 3, -6.0 * x * s * s, s * (30.0 * x * x - 6.0)


def _factors(U: np.ndarray):
    """Per-coordinate p, p', p'' for points inside [-1, 1]^k."""
    U = np.clip(U, -1.0, 1.0)
    s = 1.0 - U * U
    return s ** 3, -6.0 * U * s * s, s * (30.0 * U * U - 6.0)


def _others_product(P: np.ndarray, skip: Tuple[int, ...]) -> np.ndarray:
    """Product over coordinates not in skip, row-wise."""
    keep = [j for j in range(P.shape[1]) if j not in skip]
    if not keep:
        return np.ones(P.shape[0])
    return np.prod(P[:, keep], axis=1)


def q_value(U: np.ndarray) -> np.ndarray:
    """q(u) = prod_j p(u_j) for rows of U in [-1, 1]^k."""
    P, _, _ = _factors(np.atleast_2d(U))
    return np.prod(P, axis=1)


def q_grad(U: np.ndarray) -> np.ndarray:
    """Gradient of q, row-wise."""
    U = np.atleast_2d(U)
    P, dP, _ = _factors(U)
    grad = np.empty_like(U, dtype=float)
    for j in range(U.shape[1]):
        grad[:, j] = dP[:, j] * _others_product(P, (j,))
    return grad


def q_hessian(U: np.ndarray) -> np.ndarray:
    """Hessian of q, shape (n, k, k)."""
    U = np.atleast_2d(U)
    n, k = U.shape
    P, dP, d2P = _factors(U)
    hess = np.empty((n, k, k))
    for a in range(k):
        hess[:, a, a] = d2P[:, a] * _others_product(P, (a,))
        for b in range(a + 1, k):
            off = dP[:, a] * dP[:, b] * _others_product(P, (a, b))
            hess[:, a, b] = off
            hess[:, b, a] = off
    return hess
