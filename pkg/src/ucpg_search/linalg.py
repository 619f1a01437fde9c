"""
This module contains the dense linear-algebra kernels shared by the reductions and the
walk dynamics.

Time evolution of a time-independent real symmetric Hamiltonian is done exactly through
its eigendecomposition H = V diag(lambda) V^T:

    psi(t) = V exp(-i lambda t) V^T psi(0)
"""
from typing import Tuple

import numpy as np
from scipy.linalg import eigh

from ucpg_search.exceptions import DomainException
from ucpg_search.settings import HERMITIAN_TOL


def asymmetry(matrix: np.ndarray) -> float:
    """Largest entry of |M - M^H|."""
    matrix = np.asarray(matrix)
    return float(np.max(np.abs(matrix - matrix.conj().T))) if matrix.size else 0.0


def check_symmetric(matrix: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """
    Check that a matrix is square and Hermitian.

    Args:
        matrix (np.ndarray): The matrix to check.
        tol (float): Largest accepted entrywise asymmetry.

    Returns:
        np.ndarray: The matrix as an array.

    Raises:
        DomainException: If the matrix is not square or not Hermitian within tol.
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DomainException(f"Expected a square matrix, got shape {matrix.shape}")
    deviation = asymmetry(matrix)
    if deviation > tol:
        raise DomainException(f"Matrix is not Hermitian: asymmetry {deviation:.3e} > {tol:.1e}")
    return matrix


def spectral_decomposition(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Diagonalize a Hermitian matrix.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Ascending eigenvalues and the eigenvector columns.
    """
    matrix = check_symmetric(matrix)
    return eigh(matrix)


def propagate(matrix: np.ndarray, psi0: np.ndarray, times: np.ndarray) -> np.ndarray:
    """
    Evolve a state under exp(-i H t) for every sampled time.

    Args:
        matrix (np.ndarray): Hermitian Hamiltonian H.
        psi0 (np.ndarray): Initial state.
        times (np.ndarray): Sample times.

    Returns:
        np.ndarray: Complex array of shape (len(times), dim), row k is psi(times[k]).
    """
    eigenvalues, eigenvectors = spectral_decomposition(matrix)
    coefficients = eigenvectors.conj().T @ np.asarray(psi0, dtype=complex)
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), eigenvalues))
    return (phases * coefficients) @ eigenvectors.T


def propagate_component(
    matrix: np.ndarray, psi0: np.ndarray, times: np.ndarray, index: int = 0
) -> np.ndarray:
    """
    Evolve a state and keep one amplitude, <index|exp(-i H t)|psi0>.

    Returns:
        np.ndarray: Complex amplitudes, one per sampled time.
    """
    eigenvalues, eigenvectors = spectral_decomposition(matrix)
    coefficients = eigenvectors.conj().T @ np.asarray(psi0, dtype=complex)
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), eigenvalues))
    return phases @ (coefficients * eigenvectors[index, :])


def lowest_gap(matrix: np.ndarray) -> float:
    """Gap between the two lowest eigenvalues of a symmetric matrix."""
    eigenvalues = eigh(check_symmetric(matrix), eigvals_only=True)
    return float(eigenvalues[1] - eigenvalues[0])
