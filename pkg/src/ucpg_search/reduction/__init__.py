"""
This package contains the reductions of the adjacency Hamiltonian to its invariant
subspace: the closed form, the Lanczos construction and their certification.
"""
from .closed_form import (
    BASIS_LABELS,
    ReducedHamiltonian,
    reduce_closed_form,
    project_adjacency,
    self_loop_identity_holds,
)
from .krylov import KrylovReduction, reduce_krylov
from .certification import SubspaceCertificate, certify_same_subspace, eigenvalue_agreement

__all__ = [
    "BASIS_LABELS",
    "ReducedHamiltonian",
    "reduce_closed_form",
    "project_adjacency",
    "self_loop_identity_holds",
    "KrylovReduction",
    "reduce_krylov",
    "SubspaceCertificate",
    "certify_same_subspace",
    "eigenvalue_agreement",
]
