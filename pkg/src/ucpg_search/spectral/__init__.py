"""
This package contains the search Hamiltonian, its spectral analysis and the optimal
coupling factor.
"""
from .hamiltonian import (
    HamiltonianBasis,
    SearchHamiltonian,
    SplitHamiltonian,
    build_model_hamiltonian,
    build_search_hamiltonian,
    model_couplings,
    split_search_hamiltonian,
)
from .analysis import (
    THREE_LEVEL,
    TWO_LEVEL,
    AvoidedCrossing,
    SpectralData,
    analyze_spectrum,
    check_avoided_crossing,
    classify_case,
    compute_betas,
    compute_gamma_opt,
    compute_kappa,
    direct_overlap,
    gamma_by_degeneracy,
    gamma_formula,
    gap_profile,
    predicted_overlap,
    predicted_runtime,
    rabi_time,
    total_runtime,
    two_level_runtime,
)
from .eigenbasis import eigenbasis_matrix, expected_eigenbasis_form, transform_to_eigenbasis

__all__ = [
    "HamiltonianBasis",
    "SearchHamiltonian",
    "SplitHamiltonian",
    "build_model_hamiltonian",
    "build_search_hamiltonian",
    "model_couplings",
    "split_search_hamiltonian",
    "THREE_LEVEL",
    "TWO_LEVEL",
    "AvoidedCrossing",
    "SpectralData",
    "analyze_spectrum",
    "check_avoided_crossing",
    "classify_case",
    "compute_betas",
    "compute_gamma_opt",
    "compute_kappa",
    "direct_overlap",
    "gamma_by_degeneracy",
    "gamma_formula",
    "gap_profile",
    "predicted_overlap",
    "predicted_runtime",
    "rabi_time",
    "total_runtime",
    "two_level_runtime",
    "eigenbasis_matrix",
    "expected_eigenbasis_form",
    "transform_to_eigenbasis",
]
