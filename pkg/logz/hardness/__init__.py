"""Hard-instance generation and verification."""
from logz.hardness.polynomial import p_value, p_derivs, q_value, q_grad, q_hessian
from logz.hardness.instance import (
    HardInstancePotential,
    generate,
    cell_mass_decrease,
    instance_z,
)
from logz.hardness.verify import verify_instance

__all__ = [
    "p_value",
    "p_derivs",
    "q_value",
    "q_grad",
    "q_hessian",
    "HardInstancePotential",
    "generate",
    "cell_mass_decrease",
    "instance_z",
    "verify_instance",
]
