"""Hard-instance schemas."""
import math
from typing import List, Literal

from pydantic import BaseModel, Field, model_validator

COEFFICIENT_SLACK = 1e-12


def integer_root(n: int, k: int) -> int:
    """m with m**k == n, or -1."""
    m = int(round(n ** (1.0 / k)))
    for candidate in (m - 1, m, m + 1):
        if candidate >= 1 and candidate ** k == n:
            return candidate
    return -1


class HardInstance(BaseModel):
    """
    Cell-partitioned bump perturbation of ||x||^2/2 on [-1/sqrt(k), 1/sqrt(k)]^k.

    Cells are indexed in C order over an m x ... x m grid, m = n^(1/k).
    Type-1 cells are unperturbed; type-2 cell tau adds c_tau q((x - v_tau)/l).
    """
    k: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    types: List[int]
    coefficients: List[float]
    mode: Literal["uniform", "equalized"] = "uniform"

    @model_validator(mode="after")
    def validate_instance(self) -> "HardInstance":
        """Grid shape, cell types and coefficient range."""
        if integer_root(self.n, self.k) < 0:
            raise ValueError(f"n={self.n} is not a perfect {self.k}-th power")
        if len(self.types) != self.n or len(self.coefficients) != self.n:
            raise ValueError(f"expected {self.n} cell types and coefficients")
        if any(t not in (1, 2) for t in self.types):
            raise ValueError("cell types must be 1 or 2")
        c_max = self.c_max
        for t, c in zip(self.types, self.coefficients):
            if t == 1 and c != 0:
                raise ValueError("type-1 cells must have zero coefficient")
            if not 0 <= c <= c_max * (1 + COEFFICIENT_SLACK):
                raise ValueError(f"coefficient {c} outside [0, {c_max}]")
        return self

    @property
    def m(self) -> int:
        """Cells per axis."""
        return integer_root(self.n, self.k)

    @property
    def half_width(self) -> float:
        """l = 1/(sqrt(k) m); cells have side 2l."""
        return 1.0 / (math.sqrt(self.k) * self.m)

    @property
    def cube_radius(self) -> float:
        return 1.0 / math.sqrt(self.k)

    @property
    def c_max(self) -> float:
        """l^2/(72k), the largest coefficient keeping the Hessian in [0.5, 1.5]."""
        return self.half_width ** 2 / (72 * self.k)

    @property
    def type2_cells(self) -> List[int]:
        return [tau for tau, t in enumerate(self.types) if t == 2]

    @property
    def center_offset(self) -> float:
        """
        Bump height at the origin: c of the center cell when m is odd, else 0.

        The origin is the center of that cell, where q = 1; for even m it lies
        on cell faces, where q vanishes.
        """
        m = self.m
        if m % 2 == 0:
            return 0.0
        center = sum((m // 2) * m ** axis for axis in range(self.k))
        return float(self.coefficients[center])


class HardnessReport(BaseModel):
    """Outcome of verifying smoothness, convexity and continuity of an instance."""
    k: int
    n: int
    points: int
    min_eigenvalue: float
    max_eigenvalue: float
    eigenvalues_ok: bool
    max_gradient_jump: float
    max_hessian_jump: float
    continuity_ok: bool
    max_face_gradient_deviation: float
    faces_ok: bool
    ok: bool
