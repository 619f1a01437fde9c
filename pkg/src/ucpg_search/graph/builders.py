"""
This module contains functions for building UCPG configurations, adjacency matrices and
the collapsed basis.
"""
import logging
from typing import List

import numpy as np

from ucpg_search.exceptions import (
    CapacityException,
    ConfigurationException,
    DegenerateBasisException,
    DomainException,
)
from ucpg_search.graph.models import CollapsedBasis, FullAdjacency, UcpgConfig
from ucpg_search.settings import dense_guard


def make_config(n_total: int, p_parts: int, m0: int) -> UcpgConfig:
    """
    Create a UCPG configuration, deriving m1 from P * m1 + m0 = N.

    Args:
        n_total (int): Total number of vertices N.
        p_parts (int): Number of unmarked partitions P.
        m0 (int): Size of the marked partition.

    Returns:
        UcpgConfig: The validated configuration.

    Raises:
        ConfigurationException: If a size is not positive or N - m0 is not divisible by P.
        DomainException: If m0 >= N.
    """
    if m0 < 1 or p_parts < 1 or n_total < 1:
        raise ConfigurationException(
            f"N, P and m0 must be positive, got (N={n_total}, P={p_parts}, m0={m0})"
        )
    if m0 >= n_total:
        raise DomainException(
            f"The marked partition must leave vertices outside V0, got m0={m0} >= N={n_total}"
        )
    rest = n_total - m0
    if rest % p_parts != 0:
        raise ConfigurationException(
            f"N - m0 = {rest} is not divisible by P for (N={n_total}, P={p_parts}, m0={m0})"
        )
    return UcpgConfig(n_total=n_total, p_parts=p_parts, m0=m0, m1=rest // p_parts)


def check_dense_capacity(n_total: int):
    """
    Check that an N x N dense matrix is allowed.

    Args:
        n_total (int): The matrix size.

    Raises:
        CapacityException: If N exceeds the dense guard.
    """
    guard = dense_guard()
    if n_total > guard:
        raise CapacityException(
            f"N={n_total} exceeds the dense guard of {guard} (set QWALK_DENSE_GUARD to raise it)"
        )


def build_adjacency(config: UcpgConfig) -> FullAdjacency:
    """
    Build the full adjacency Hamiltonian: entry (i, j) is 1 iff i and j lie in different
    partitions.

    Args:
        config (UcpgConfig): The graph.

    Returns:
        FullAdjacency: The dense adjacency matrix with omega at index 0.

    Raises:
        CapacityException: If N exceeds the dense guard.
    """
    check_dense_capacity(config.n_total)
    labels = config.partition_labels()
    matrix = (labels[:, None] != labels[None, :]).astype(float)
    logging.info("Built %sx%s adjacency for %s", config.n_total, config.n_total, config.label())
    return FullAdjacency(matrix=matrix, config=config, marked_index=0)


def uniform_superposition(config: UcpgConfig) -> np.ndarray:
    """
    Get the uniform superposition |s> over all vertices.

    Returns:
        np.ndarray: Vector with amplitude 1/sqrt(N) everywhere.
    """
    check_dense_capacity(config.n_total)
    return np.full(config.n_total, 1.0 / np.sqrt(config.n_total))


def build_collapsed_basis(
    config: UcpgConfig, adjacency: FullAdjacency, allow_two_dimensional: bool = False
) -> CollapsedBasis:
    """
    Build the collapsed basis vectors in full space.

    Args:
        config (UcpgConfig): The graph.
        adjacency (FullAdjacency): Its adjacency, used for the vertex layout.
        allow_two_dimensional (bool): Return the (omega, S_V0bar) basis when m0 = 1
            instead of raising.

    Returns:
        CollapsedBasis: The orthonormal collapsed basis.

    Raises:
        DegenerateBasisException: If m0 = 1 and the two-dimensional variant was not allowed.
    """
    if adjacency.config != config:
        raise DomainException("Adjacency was built for a different configuration")
    n_total, m0 = config.n_total, config.m0
    omega = np.zeros(n_total)
    omega[adjacency.marked_index] = 1.0

    s_vbar0 = np.zeros(n_total)
    s_vbar0[m0:] = 1.0 / np.sqrt(n_total - m0)

    if m0 == 1:
        if not allow_two_dimensional:
            raise DegenerateBasisException(
                f"m0 = 1 for {config.label()}: S_V0-omega does not exist, "
                "use the two-dimensional (omega, S_V0bar) basis"
            )
        logging.warning("Using the two-dimensional collapsed basis for %s", config.label())
        return CollapsedBasis(omega=omega, s_v0_minus_omega=None, s_vbar0=s_vbar0)

    s_v0_minus_omega = np.zeros(n_total)
    s_v0_minus_omega[1:m0] = 1.0 / np.sqrt(m0 - 1)
    return CollapsedBasis(omega=omega, s_v0_minus_omega=s_v0_minus_omega, s_vbar0=s_vbar0)


def gram_matrix(basis: CollapsedBasis) -> np.ndarray:
    """Overlaps B^T B of the basis vectors, the identity for an orthonormal basis."""
    matrix = basis.as_matrix()
    return matrix.T @ matrix


def closure_residuals(adjacency: FullAdjacency, basis: CollapsedBasis) -> List[float]:
    """
    Compute the leakage of H_a out of the collapsed span for every basis vector.

    Args:
        adjacency (FullAdjacency): The adjacency Hamiltonian.
        basis (CollapsedBasis): The collapsed basis.

    Returns:
        List[float]: ||(1 - Pi) H_a v|| for each basis vector v.
    """
    projector = basis.projector()
    residuals = []
    for vector in basis.vectors():
        image = adjacency.matrix @ vector
        residuals.append(float(np.linalg.norm(image - projector @ image)))
    return residuals
