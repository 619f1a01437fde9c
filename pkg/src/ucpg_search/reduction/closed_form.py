"""
This module contains the closed-form reduced adjacency Hamiltonian H_ra and its
comparison against the projection of the full adjacency.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

import numpy as np

from ucpg_search.graph import CollapsedBasis, FullAdjacency, UcpgConfig

BASIS_LABELS = ("omega", "S_V0-omega", "S_V0bar")


@dataclass(frozen=True, eq=False)
class ReducedHamiltonian:
    """
    The reduced adjacency Hamiltonian in the (omega, S_V0-omega, S_V0bar) basis.

    Attributes:
        matrix (np.ndarray): Real symmetric 3 x 3 matrix, zero row/column 1 when m0 = 1.
        config (UcpgConfig): The graph it was reduced from.
        basis_labels (Tuple[str, str, str]): Labels of the basis states.
    """

    matrix: np.ndarray
    config: UcpgConfig
    basis_labels: Tuple[str, str, str] = field(default=BASIS_LABELS)

    @property
    def active_indices(self) -> Tuple[int, ...]:
        return (0, 1, 2) if self.config.has_unmarked_rest else (0, 2)

    def active_block(self) -> np.ndarray:
        """
        Get the block on the basis states that exist for this config.

        Returns:
            np.ndarray: 3 x 3 matrix, or the 2 x 2 (omega, S_V0bar) block when m0 = 1.
        """
        indices = list(self.active_indices)
        return self.matrix[np.ix_(indices, indices)]

    def uniform_state(self) -> np.ndarray:
        """
        Get the reduced coordinates of the uniform superposition |s>.

        Returns:
            np.ndarray: (1, sqrt(m0 - 1), sqrt(N - m0)) / sqrt(N).
        """
        n_total, m0 = self.config.n_total, self.config.m0
        return np.array([1.0, np.sqrt(m0 - 1), np.sqrt(n_total - m0)]) / np.sqrt(n_total)

    def to_dict(self):
        return {
            "matrix": self.matrix.tolist(),
            "basis_labels": list(self.basis_labels),
            "null_middle_row": not self.config.has_unmarked_rest,
        }


def reduce_closed_form(config: UcpgConfig) -> ReducedHamiltonian:
    """
    Build H_ra from the graph parameters.

    Entries: (1,3) = sqrt(N - m0), (2,3) = sqrt((N - m0)(m0 - 1)), (3,3) = N - m0 - m1.

    Args:
        config (UcpgConfig): The graph.

    Returns:
        ReducedHamiltonian: The closed-form reduced Hamiltonian.
    """
    rest = config.n_total - config.m0
    matrix = np.zeros((3, 3))
    matrix[0, 2] = matrix[2, 0] = np.sqrt(rest)
    matrix[1, 2] = matrix[2, 1] = np.sqrt(rest * (config.m0 - 1))
    matrix[2, 2] = rest - config.m1
    return ReducedHamiltonian(matrix=matrix, config=config)


def self_loop_identity_holds(config: UcpgConfig) -> bool:
    """
    Check N - m0 - m1 = (N - m0)(1 - 1/P) in exact rational arithmetic.
    """
    rest = config.n_total - config.m0
    return Fraction(rest) * (1 - Fraction(1, config.p_parts)) == rest - config.m1


def project_adjacency(adjacency: FullAdjacency, basis: CollapsedBasis) -> np.ndarray:
    """
    Express Pi H_a Pi in the collapsed basis.

    Args:
        adjacency (FullAdjacency): The full adjacency Hamiltonian.
        basis (CollapsedBasis): The collapsed basis.

    Returns:
        np.ndarray: 3 x 3 matrix in the reduced coordinates.
    """
    stacked = basis.as_matrix()
    block = stacked.T @ adjacency.matrix @ stacked
    matrix = np.zeros((3, 3))
    indices = list(basis.reduced_indices)
    matrix[np.ix_(indices, indices)] = block
    return matrix
