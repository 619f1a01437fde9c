"""
This module contains the certificate that the closed-form reduction and the Krylov
reduction describe the same invariant subspace and the same projected dynamics.
"""
import logging
from typing import Dict, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from ucpg_search.exceptions import CertificationException
from ucpg_search.graph import (
    CollapsedBasis,
    FullAdjacency,
    UcpgConfig,
    build_adjacency,
    uniform_superposition,
)
from ucpg_search.linalg import propagate_component
from ucpg_search.reduction.closed_form import ReducedHamiltonian
from ucpg_search.reduction.krylov import KrylovReduction
from ucpg_search.settings import DYNAMICS_TOL, EIGENVALUE_TOL, PROJECTOR_TOL

DEFAULT_CERTIFICATION_TIMES = np.linspace(0.0, 50.0, 200)


class SubspaceCertificate(BaseModel):
    """
    Represents the comparison of two reductions of the same adjacency.

    Attributes:
        config (UcpgConfig): The graph.
        closed_dim (int): Dimension of the collapsed basis.
        krylov_dim (int): Dimension of the Krylov subspace.
        projector_norm (str): Norm used for the projector distance.
        projector_distance (float): ||Pi_collapsed - Pi_krylov||.
        dynamics_distance (float): Largest omega-amplitude difference over the samples.
        eigenvalue_distance (float): Largest difference of the sorted eigenvalues.
        tolerances (Dict[str, float]): Tolerances the distances were judged with.
        passed (bool): True when every distance is within its tolerance.
    """

    model_config = ConfigDict(frozen=True)

    config: UcpgConfig
    closed_dim: int
    krylov_dim: int
    projector_norm: str = "frobenius"
    projector_distance: float
    dynamics_distance: float
    eigenvalue_distance: float
    tolerances: Dict[str, float]
    passed: bool


def eigenvalue_agreement(closed: ReducedHamiltonian, krylov: KrylovReduction) -> float:
    """
    Compare the eigenvalue multisets of H_ra and the Lanczos tridiagonal matrix on the
    shared subspace.

    Returns:
        float: Largest absolute difference of the sorted eigenvalues.

    Raises:
        CertificationException: If the two subspaces have different dimensions.
    """
    block = closed.active_block()
    if block.shape[0] != krylov.dim:
        raise CertificationException(
            f"Closed-form dimension {block.shape[0]} differs from Krylov dimension {krylov.dim}"
        )
    closed_values = np.linalg.eigvalsh(block)
    krylov_values = np.linalg.eigvalsh(krylov.tridiagonal)
    return float(np.max(np.abs(closed_values - krylov_values)))


def certify_same_subspace(
    closed: ReducedHamiltonian,
    collapsed: CollapsedBasis,
    krylov: KrylovReduction,
    adjacency: Optional[FullAdjacency] = None,
    times: Optional[np.ndarray] = None,
    projector_tol: float = PROJECTOR_TOL,
    dynamics_tol: float = DYNAMICS_TOL,
    eigenvalue_tol: float = EIGENVALUE_TOL,
) -> SubspaceCertificate:
    """
    Certify that both reductions span the same subspace and generate the same dynamics.

    The dynamics distance compares <omega|exp(-i H_a t)|s> in full space with the same
    amplitude evolved under H_ra in reduced coordinates.

    Args:
        closed (ReducedHamiltonian): Closed-form reduction.
        collapsed (CollapsedBasis): The collapsed basis of the closed form.
        krylov (KrylovReduction): Lanczos reduction of the same adjacency.
        adjacency (Optional[FullAdjacency]): The adjacency, rebuilt from the config if None.
        times (Optional[np.ndarray]): Sample times, 200 points on [0, 50] by default.
        projector_tol (float): Tolerance for the projector distance.
        dynamics_tol (float): Tolerance for the dynamics distance.
        eigenvalue_tol (float): Tolerance for the eigenvalue distance.

    Returns:
        SubspaceCertificate: The distances and the verdict.

    Raises:
        CertificationException: If the reductions have different dimensions.
    """
    config = closed.config
    if collapsed.dim != krylov.dim:
        raise CertificationException(
            f"Collapsed basis has dim {collapsed.dim}, Krylov reduction has dim {krylov.dim} "
            f"for {config.label()}"
        )
    if adjacency is None:
        adjacency = build_adjacency(config)
    if times is None:
        times = DEFAULT_CERTIFICATION_TIMES

    projector_distance = float(
        np.linalg.norm(collapsed.projector() - krylov.projector(), ord="fro")
    )

    full_amplitudes = propagate_component(
        adjacency.matrix, uniform_superposition(config), times, index=adjacency.marked_index
    )
    reduced_amplitudes = propagate_component(closed.matrix, closed.uniform_state(), times, index=0)
    dynamics_distance = float(np.max(np.abs(full_amplitudes - reduced_amplitudes)))

    eigenvalue_distance = eigenvalue_agreement(closed, krylov)

    passed = (
        projector_distance <= projector_tol
        and dynamics_distance <= dynamics_tol
        and eigenvalue_distance <= eigenvalue_tol
    )
    if not passed:
        logging.warning(
            "Subspace certification failed for %s: projector %s, dynamics %s, eigenvalues %s",
            config.label(),
            projector_distance,
            dynamics_distance,
            eigenvalue_distance,
        )
    return SubspaceCertificate(
        config=config,
        closed_dim=collapsed.dim,
        krylov_dim=krylov.dim,
        projector_distance=projector_distance,
        dynamics_distance=dynamics_distance,
        eigenvalue_distance=eigenvalue_distance,
        tolerances={
            "projector": projector_tol,
            "dynamics": dynamics_tol,
            "eigenvalues": eigenvalue_tol,
        },
        passed=passed,
    )
