"""
This package provides UCPG configurations, full adjacency matrices and the collapsed basis.

Usage:
    from ucpg_search.graph import make_config, build_adjacency, build_collapsed_basis

    config = make_config(7, 2, 3)
    adjacency = build_adjacency(config)
    basis = build_collapsed_basis(config, adjacency)
"""
from .models import UcpgConfig, FullAdjacency, CollapsedBasis
from .builders import (
    make_config,
    build_adjacency,
    build_collapsed_basis,
    check_dense_capacity,
    closure_residuals,
    gram_matrix,
    uniform_superposition,
)

__all__ = [
    "UcpgConfig",
    "FullAdjacency",
    "CollapsedBasis",
    "make_config",
    "build_adjacency",
    "build_collapsed_basis",
    "check_dense_capacity",
    "closure_residuals",
    "gram_matrix",
    "uniform_superposition",
]
