"""Smoothness, convexity and continuity checks for hard instances."""
import logging

import numpy as np

from logz.core.rng import RngLike, RngStream, as_generator
from logz.hardness.instance import HardInstancePotential
from logz.models.hardness import HardInstance, HardnessReport

logger = logging.getLogger(__name__)

EIGEN_SLACK = 1e-9
FACE_TOLERANCE = 1e-9
STEP = 1e-7
GRADIENT_JUMP_TOLERANCE = 1e-6
HESSIAN_JUMP_TOLERANCE = 1e-4


def _sample_points(instance: HardInstance, points: int, gen: np.random.Generator):
    """Interior, face and outside points; returns (points, face rows, face axes)."""
    k = instance.k
    R = instance.cube_radius
    n_face = points * 3 // 10
    n_out = points * 3 // 10
    n_in = points - n_face - n_out

    interior = gen.uniform(-R, R, size=(n_in, k))

    faces = gen.uniform(-R, R, size=(n_face, k))
    axes = gen.integers(0, k, size=n_face)
    grid_lines = gen.integers(0, instance.m + 1, size=n_face)
    faces[np.arange(n_face), axes] = -R + 2 * instance.half_width * grid_lines

    outside = gen.uniform(-3 * R, 3 * R, size=(n_out, k))
    far = np.all(np.abs(outside) <= R, axis=1)
    outside[far, 0] = np.where(outside[far, 0] >= 0, 1.5 * R, -1.5 * R)

    X = np.concatenate([interior, faces, outside], axis=0)
    face_rows = np.arange(n_in, n_in + n_face)
    return X, face_rows, axes


def verify_instance(instance: HardInstance, points: int = 10_000, rng: RngLike = None) -> HardnessReport:
    """
    Check an instance at sampled points.

    Hessian eigenvalues must lie in [0.5, 1.5]; across cell faces the
    gradient and Hessian must agree from both sides, and on a face the
    gradient equals that of ||x||^2/2.
    """
    gen = as_generator(rng if rng is not None else RngStream(0))
    potential = HardInstancePotential(instance)
    X, face_rows, axes = _sample_points(instance, points, gen)

    eigenvalues = np.linalg.eigvalsh(potential.hessian(X))
    min_eig = float(eigenvalues.min())
    max_eig = float(eigenvalues.max())
    eigen_ok = min_eig >= 0.5 - EIGEN_SLACK and max_eig <= 1.5 + EIGEN_SLACK

    faces = X[face_rows]
    offset = np.zeros_like(faces)
    offset[np.arange(len(face_rows)), axes] = STEP
    if len(face_rows):
        grad_jump = float(np.max(np.linalg.norm(potential.grad(faces + offset) - potential.grad(faces - offset), axis=1)))
        hess_jump = float(
            np.max(np.linalg.norm(potential.hessian(faces + offset) - potential.hessian(faces - offset), axis=(1, 2)))
        )
        face_dev = float(np.max(np.linalg.norm(potential.grad(faces) - faces, axis=1)))
    else:
        grad_jump = hess_jump = face_dev = 0.0
    continuity_ok = grad_jump <= GRADIENT_JUMP_TOLERANCE and hess_jump <= HESSIAN_JUMP_TOLERANCE
    faces_ok = face_dev <= FACE_TOLERANCE

    report = HardnessReport(
        k=instance.k,
        n=instance.n,
        points=int(X.shape[0]),
        min_eigenvalue=min_eig,
        max_eigenvalue=max_eig,
        eigenvalues_ok=eigen_ok,
        max_gradient_jump=grad_jump,
        max_hessian_jump=hess_jump,
        continuity_ok=continuity_ok,
        max_face_gradient_deviation=face_dev,
        faces_ok=faces_ok,
        ok=eigen_ok and continuity_ok and faces_ok,
    )
    logger.info(
        f"Verified instance k={instance.k} n={instance.n}: eigenvalues [{min_eig:.6f}, {max_eig:.6f}], ok={report.ok}"
    )
    return report
