"""Multilevel geometry from a variance-decay model and bias/variance budgets."""
import logging
import math
from typing import Callable, Optional

from logz.core.exceptions import ValidationException
from logz.models.plan import LevelPlan, VarianceModel
from logz.utils.helpers import ceil_tol, num_steps

logger = logging.getLogger(__name__)

MAX_REFINEMENTS = 60
BUDGET_RTOL = 1e-12


def plan_levels(
    model: VarianceModel,
    L_g: float,
    c: float,
    eps_b: float,
    eps_sigma: float,
    eta_max: float,
    T_of_eps: Callable[[float], float],
    cf: float = 4.0,
    grad_cost_per_step: int = 1,
    max_levels: Optional[int] = None,
    max_samples: Optional[int] = None,
    min_samples: int = 1,
) -> LevelPlan:
    """
    Plan step sizes, sample counts and the shared horizon.

    Args:
        model: F(eta) bounding the mean-square coupled gap
        L_g: Lipschitz constant of the test function
        c: Poincare constant of the target (1/mu)
        eps_b: Bias budget
        eps_sigma: Standard-deviation budget
        eta_max: Admissible coarse step
        T_of_eps: Mixing time of the sampler as a function of W2 accuracy
        cf: Geometric-sum constant of the sample counts
        grad_cost_per_step: Gradient queries per sampler step
        max_levels: Optional cap on k
        max_samples: Optional cap on N_0; all N_j are rescaled with it
        min_samples: Floor on every N_j

    Returns:
        LevelPlan

    Raises:
        ValidationException: On non-positive budgets or more than 60 levels
    """
    if not (eps_b > 0 and eps_sigma > 0 and c > 0 and eta_max > 0):
        raise ValidationException("eps_b, eps_sigma, c and eta_max must be positive")
    if L_g < 0:
        raise ValidationException(f"L_g must be >= 0, got {L_g}")

    eta0 = model.solve(c / 4, eta_max)
    F0 = model.evaluate(eta0)

    k = 0
    if L_g > 0:
        bias_target = eps_b ** 2 / (4 * L_g ** 2)
        while model.evaluate(eta0 / 2 ** k) > bias_target * (1 + BUDGET_RTOL):
            k += 1
            if k > MAX_REFINEMENTS:
                raise ValidationException(f"Bias budget needs more than {MAX_REFINEMENTS} levels")

    capped = False
    if max_levels is not None and k > max_levels:
        logger.debug(f"Level cap {max_levels} binds (planned k={k})")
        k = max_levels
        capped = True

    scale = 4 * cf * L_g ** 2 / eps_sigma ** 2
    Ns = []
    for j in range(k + 1):
        eta_j = eta0 / 2 ** j
        bound = scale * math.sqrt(F0 * eta_j * model.evaluate(eta_j) / eta0)
        Ns.append(max(min_samples, ceil_tol(bound)))

    if max_samples is not None and Ns[0] > max_samples:
        ratio = max_samples / Ns[0]
        Ns = [max(min_samples, ceil_tol(n * ratio)) for n in Ns]
        capped = True

    if L_g > 0:
        mixing = T_of_eps(eps_b / L_g)
    else:
        mixing = 0.0
    T = max(1, num_steps(mixing, eta0)) * eta0

    plan = LevelPlan(
        eta0=eta0,
        k=k,
        Ns=Ns,
        T=T,
        eps_b=eps_b,
        eps_sigma=eps_sigma,
        L_g=L_g,
        grad_cost_per_step=grad_cost_per_step,
        capped=capped,
    )
    logger.debug(f"Planned eta0={eta0:.4e} k={k} Ns={Ns} T={T:.4f} capped={capped}")
    return plan


def predicted_queries(plan: LevelPlan) -> int:
    """
    Exact gradient queries of mlmc_estimate on this plan.

    Example:
        >>> plan = LevelPlan(eta0=0.5, k=1, Ns=[4, 2], T=1.0, eps_b=0.1, eps_sigma=0.1, L_g=1.0)
        >>> predicted_queries(plan)
        20
    """
    cost = plan.grad_cost_per_step
    etas = plan.etas
    total = plan.Ns[0] * cost * num_steps(plan.T, etas[0])
    for j in range(1, plan.k + 1):
        total += plan.Ns[j] * cost * (num_steps(plan.T, etas[j]) + num_steps(plan.T, etas[j - 1]))
    return total
