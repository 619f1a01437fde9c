"""
This module contains the Lanczos construction of the invariant subspace
span{H^n |psi(0)>} of a real symmetric matrix.
"""
import logging
from dataclasses import dataclass
from typing import List, Union

import numpy as np

from ucpg_search.exceptions import DomainException
from ucpg_search.graph import FullAdjacency
from ucpg_search.linalg import check_symmetric
from ucpg_search.settings import INVARIANCE_TOL, NORM_TOL


@dataclass(frozen=True, eq=False)
class KrylovReduction:
    """
    Result of a Lanczos run.

    Attributes:
        basis (np.ndarray): N x dim matrix of orthonormal Lanczos vectors.
        tridiagonal (np.ndarray): dim x dim projected matrix Q^T H Q.
        residual (float): Norm of the leftover Lanczos vector when the run stopped.
        tol (float): Invariance tolerance the run was made with.
    """

    basis: np.ndarray
    tridiagonal: np.ndarray
    residual: float
    tol: float

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def is_invariant(self) -> bool:
        return self.residual < self.tol

    def vectors(self) -> List[np.ndarray]:
        return [self.basis[:, k] for k in range(self.dim)]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T

    def to_dict(self):
        return {
            "dim": self.dim,
            "tridiagonal": self.tridiagonal.tolist(),
            "residual": self.residual,
            "invariant": self.is_invariant,
        }


def reduce_krylov(
    adjacency: Union[FullAdjacency, np.ndarray],
    start_vector: np.ndarray,
    max_dim: int = 3,
    tol: float = INVARIANCE_TOL,
) -> KrylovReduction:
    """
    Run Lanczos with full reorthogonalization from a normalized start vector.

    The run stops as soon as the next Lanczos vector has norm below tol (the span is then
    invariant) or when max_dim vectors have been produced.

    Args:
        adjacency (Union[FullAdjacency, np.ndarray]): Real symmetric matrix.
        start_vector (np.ndarray): Normalized start vector.
        max_dim (int): Largest subspace dimension.
        tol (float): Invariance tolerance.

    Returns:
        KrylovReduction: Lanczos basis, tridiagonal matrix and final residual.

    Raises:
        DomainException: If the matrix is not symmetric, the start vector is not
            normalized or max_dim < 1.
    """
    matrix = adjacency.matrix if isinstance(adjacency, FullAdjacency) else adjacency
    matrix = check_symmetric(matrix)
    start = np.asarray(start_vector, dtype=float)
    if max_dim < 1:
        raise DomainException(f"max_dim must be at least 1, got {max_dim}")
    if start.shape != (matrix.shape[0],):
        raise DomainException(
            f"Start vector of length {start.shape} does not match matrix size {matrix.shape[0]}"
        )
    norm = np.linalg.norm(start)
    if abs(norm - 1.0) > NORM_TOL:
        raise DomainException(f"Start vector must be normalized, got norm {norm:.12g}")

    vectors = [start]
    alphas = []
    betas = []
    residual = 0.0
    for k in range(max_dim):
        q = vectors[k]
        w = matrix @ q
        alpha = float(q @ w)
        alphas.append(alpha)
        w = w - alpha * q
        if k > 0:
            w = w - betas[-1] * vectors[k - 1]
        # full reorthogonalization against every Lanczos vector so far
        stacked = np.column_stack(vectors)
        w = w - stacked @ (stacked.T @ w)
        residual = float(np.linalg.norm(w))
        if residual < tol or k + 1 == max_dim:
            break
        betas.append(residual)
        vectors.append(w / residual)

    tridiagonal = np.diag(alphas) + np.diag(betas, k=1) + np.diag(betas, k=-1)
    logging.info(
        "Lanczos stopped at dim %s with residual %s", len(vectors), residual
    )
    return KrylovReduction(
        basis=np.column_stack(vectors), tridiagonal=tridiagonal, residual=residual, tol=tol
    )
