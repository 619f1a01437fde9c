"""
This module contains the change of the search Hamiltonian from the collapsed basis to the
eigenbasis (omega, e1, e2) of H0.
"""
import logging

import numpy as np

from ucpg_search.exceptions import DegenerateBasisException, IntegrityException
from ucpg_search.settings import SYMMETRY_TOL
from ucpg_search.spectral.analysis import SpectralData
from ucpg_search.spectral.hamiltonian import HamiltonianBasis, SearchHamiltonian


def eigenbasis_matrix(spectral: SpectralData) -> np.ndarray:
    """
    Get the orthogonal matrix whose columns are omega, e1 and e2 in collapsed coordinates.
    """
    unitary = np.zeros((3, 3))
    unitary[0, 0] = 1.0
    unitary[1:, 1] = spectral.e1_coeffs
    unitary[1:, 2] = spectral.e2_coeffs
    return unitary


def expected_eigenbasis_form(spectral: SpectralData) -> np.ndarray:
    """
    Get [[-1, delta1, delta2], [delta1, lambda_plus, 0], [delta2, 0, lambda_minus]].
    """
    return np.array(
        [
            [-1.0, spectral.delta1, spectral.delta2],
            [spectral.delta1, spectral.lambda_plus, 0.0],
            [spectral.delta2, 0.0, spectral.lambda_minus],
        ]
    )


def transform_to_eigenbasis(
    search_h: SearchHamiltonian, spectral: SpectralData
) -> SearchHamiltonian:
    """
    Write H0 + H1 in the eigenbasis (omega, e1, e2) by explicit conjugation U^T H U.

    Only the H0 + H1 model reaches the expected form exactly; the exact H_seek differs
    from it in entry (2,3) and is rejected unless that defect is below tolerance.

    Args:
        search_h (SearchHamiltonian): H0 + H1 in the collapsed basis, see
            build_model_hamiltonian.
        spectral (SpectralData): Spectral data at the same coupling factor.

    Returns:
        SearchHamiltonian: The Hamiltonian in the eigen basis.

    Raises:
        DegenerateBasisException: If m0 = 1 (there is no e2).
        IntegrityException: If the spectral data belongs to another config or gamma, or
            the conjugated matrix departs from the expected form.
    """
    if search_h.basis != HamiltonianBasis.COLLAPSED:
        raise IntegrityException("Search Hamiltonian is already in the eigen basis")
    if spectral.config != search_h.config or spectral.gamma != search_h.gamma:
        raise IntegrityException(
            f"Spectral data ({spectral.config.label()}, gamma={spectral.gamma}) does not match "
            f"the search Hamiltonian ({search_h.config.label()}, gamma={search_h.gamma})"
        )
    if not search_h.config.has_unmarked_rest:
        raise DegenerateBasisException(
            f"{search_h.config.label()} has m0 = 1, the eigenbasis (omega, e1, e2) does not exist"
        )

    unitary = eigenbasis_matrix(spectral)
    matrix = unitary.T @ search_h.matrix @ unitary

    deviation = float(np.max(np.abs(matrix - expected_eigenbasis_form(spectral))))
    scale = max(1.0, float(np.max(np.abs(matrix))))
    if deviation > SYMMETRY_TOL * scale * 10:
        logging.error("Eigenbasis form deviates by %s for %s", deviation, search_h.config.label())
        raise IntegrityException(
            f"Conjugated Hamiltonian deviates from the eigenbasis form by {deviation:.3e}"
        )
    return SearchHamiltonian(
        matrix=matrix,
        gamma=search_h.gamma,
        config=search_h.config,
        basis=HamiltonianBasis.EIGEN,
    )
