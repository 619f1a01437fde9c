"""
This module contains the search Hamiltonian H_seek = -gamma H_ra - |omega><omega| and its
split H_seek = H0 + H1 used by the perturbative analysis.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from ucpg_search.exceptions import DegenerateBasisException, DomainException
from ucpg_search.graph import UcpgConfig
from ucpg_search.reduction import ReducedHamiltonian


class HamiltonianBasis(str, Enum):
    """
    Basis a reduced search Hamiltonian is written in.
    """

    COLLAPSED = "collapsed"  # (omega, S_V0-omega, S_V0bar)
    EIGEN = "eigen"  # (omega, e1, e2)


@dataclass(frozen=True, eq=False)
class SearchHamiltonian:
    """
    A 3 x 3 reduced search Hamiltonian.

    Attributes:
        matrix (np.ndarray): Real symmetric 3 x 3 matrix.
        gamma (float): Coupling factor.
        config (UcpgConfig): The graph.
        basis (HamiltonianBasis): Basis the matrix is written in.
    """

    matrix: np.ndarray
    gamma: float
    config: UcpgConfig
    basis: HamiltonianBasis = HamiltonianBasis.COLLAPSED

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def to_dict(self):
        return {
            "matrix": self.matrix.tolist(),
            "gamma": self.gamma,
            "basis": self.basis.value,
        }


@dataclass(frozen=True, eq=False)
class SplitHamiltonian:
    """
    The split H0 + H1 of the search Hamiltonian in the collapsed basis.

    H0 couples S_V0-omega and S_V0bar through v1 and carries v3 on S_V0bar; H1 couples
    omega to S_V0bar through v2. v1 is taken in the m0 >> 1 form -gamma N sqrt(alpha
    (1 - alpha)), so H0 + H1 differs from the exact H_seek in entry (2,3) by model_defect.
    """

    h0: np.ndarray
    h1: np.ndarray
    v1: float
    v2: float
    v3: float
    model_defect: float

    @property
    def model_matrix(self) -> np.ndarray:
        return self.h0 + self.h1


def check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not np.isfinite(gamma) or gamma < 0:
        raise DomainException(f"Coupling factor must be a finite non-negative number, got {gamma}")
    return gamma


def build_search_hamiltonian(reduced: ReducedHamiltonian, gamma: float) -> SearchHamiltonian:
    """
    Build H_seek = -gamma H_ra - |omega><omega| in the collapsed basis.

    Args:
        reduced (ReducedHamiltonian): The reduced adjacency Hamiltonian.
        gamma (float): Coupling factor.

    Returns:
        SearchHamiltonian: The exact reduced search Hamiltonian.
    """
    gamma = check_gamma(gamma)
    matrix = -gamma * reduced.matrix
    matrix[0, 0] -= 1.0
    return SearchHamiltonian(matrix=matrix, gamma=gamma, config=reduced.config)


def model_couplings(config: UcpgConfig, gamma: float) -> Tuple[float, float, float]:
    """
    Get the matrix elements v1, v2, v3 of the split.

    Returns:
        Tuple[float, float, float]: v1 = -gamma N sqrt(alpha (1 - alpha)),
        v2 = -gamma sqrt((1 - alpha) N), v3 = -gamma (N - m0 - m1).
    """
    alpha, n_total = config.alpha, config.n_total
    v1 = -gamma * n_total * np.sqrt(alpha * (1.0 - alpha))
    v2 = -gamma * np.sqrt((1.0 - alpha) * n_total)
    v3 = -gamma * (n_total - config.m0 - config.m1)
    return float(v1), float(v2), float(v3)


def split_search_hamiltonian(config: UcpgConfig, gamma: float) -> SplitHamiltonian:
    """
    Split the search Hamiltonian into H0 and H1.

    Args:
        config (UcpgConfig): The graph, with m0 >= 2.
        gamma (float): Coupling factor.

    Returns:
        SplitHamiltonian: H0, H1, the couplings and the defect against the exact entry.

    Raises:
        DegenerateBasisException: If m0 = 1.
    """
    if not config.has_unmarked_rest:
        raise DegenerateBasisException(
            f"The H0 + H1 split needs S_V0-omega, which does not exist for {config.label()}"
        )
    gamma = check_gamma(gamma)
    v1, v2, v3 = model_couplings(config, gamma)
    h0 = np.array([[-1.0, 0.0, 0.0], [0.0, 0.0, v1], [0.0, v1, v3]])
    h1 = np.array([[0.0, 0.0, v2], [0.0, 0.0, 0.0], [v2, 0.0, 0.0]])
    rest = config.n_total - config.m0
    exact_v1 = -gamma * np.sqrt(rest * (config.m0 - 1))
    return SplitHamiltonian(
        h0=h0, h1=h1, v1=v1, v2=v2, v3=v3, model_defect=float(abs(v1 - exact_v1))
    )


def build_model_hamiltonian(config: UcpgConfig, gamma: float) -> SearchHamiltonian:
    """
    Build H0 + H1 in the collapsed basis, the form the eigenbasis identities hold for.

    Raises:
        DegenerateBasisException: If m0 = 1.
    """
    gamma = check_gamma(gamma)
    split = split_search_hamiltonian(config, gamma)
    return SearchHamiltonian(matrix=split.model_matrix, gamma=gamma, config=config)
