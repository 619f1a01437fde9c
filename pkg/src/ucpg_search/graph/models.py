"""
This module provides the graph model types of the toolkit.

Vertex ordering: vertices 0..m0-1 form V0 with the marked vertex omega at index 0, the
partitions V1..VP follow contiguously with m1 vertices each.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, PositiveInt, computed_field, model_validator

from ucpg_search.settings import SMALL_M0_THRESHOLD


class UcpgConfig(BaseModel):
    """
    Represents a uniform complete P-partite graph with one marked vertex.

    Attributes:
        n_total (int): Total number of vertices N.
        p_parts (int): Number of partitions P not containing the marked vertex.
        m0 (int): Size of the marked partition V0.
        m1 (int): Common size of the partitions V1..VP.
    """

    model_config = ConfigDict(frozen=True)

    n_total: PositiveInt
    p_parts: PositiveInt
    m0: PositiveInt
    m1: PositiveInt

    @model_validator(mode="after")
    def _check_partition_sizes(self):
        if self.p_parts * self.m1 + self.m0 != self.n_total:
            raise ValueError(
                f"P * m1 + m0 must equal N, got {self.p_parts} * {self.m1} + {self.m0} "
                f"!= {self.n_total}"
            )
        return self

    @computed_field
    @property
    def alpha(self) -> float:
        """Fraction of vertices in the marked partition, m0 / N."""
        return self.m0 / self.n_total

    @computed_field
    @property
    def alpha1(self) -> float:
        """Fraction of vertices in each unmarked partition, m1 / N = (1 - alpha) / P."""
        return self.m1 / self.n_total

    @computed_field
    @property
    def small_m0(self) -> bool:
        """True when the marked partition is too small for the m0 >> 1 regime."""
        return self.m0 < SMALL_M0_THRESHOLD

    @property
    def has_unmarked_rest(self) -> bool:
        """True when V0 holds vertices besides omega, i.e. the reduction is 3-dimensional."""
        return self.m0 >= 2

    def partition_labels(self) -> np.ndarray:
        """
        Get the partition index of every vertex.

        Returns:
            np.ndarray: Integer array of length N, 0 for V0 and j for V_j.
        """
        labels = np.zeros(self.n_total, dtype=int)
        labels[self.m0 :] = 1 + np.arange(self.n_total - self.m0) // self.m1
        return labels

    def label(self) -> str:
        return f"N={self.n_total},P={self.p_parts},m0={self.m0}"


@dataclass(frozen=True, eq=False)
class FullAdjacency:
    """
    The dense N x N adjacency Hamiltonian H_a of a UCPG.

    Attributes:
        matrix (np.ndarray): Symmetric 0/1 matrix with zero diagonal.
        config (UcpgConfig): The graph the matrix belongs to.
        marked_index (int): Vertex index of omega.
    """

    matrix: np.ndarray
    config: UcpgConfig
    marked_index: int = 0

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def degrees(self) -> np.ndarray:
        return self.matrix.sum(axis=1)


@dataclass(frozen=True, eq=False)
class CollapsedBasis:
    """
    The collapsed basis (omega, S_V0-omega, S_V0bar) embedded in full space.

    For m0 = 1 the middle vector does not exist and s_v0_minus_omega is None; the basis is
    then two-dimensional and reduced coordinates keep a zero in position 1.

    Attributes:
        omega (np.ndarray): The marked vertex state.
        s_v0_minus_omega (Optional[np.ndarray]): Uniform state on V0 without omega.
        s_vbar0 (np.ndarray): Uniform state on all vertices outside V0.
    """

    omega: np.ndarray
    s_v0_minus_omega: Optional[np.ndarray]
    s_vbar0: np.ndarray

    @property
    def dim(self) -> int:
        return 2 if self.s_v0_minus_omega is None else 3

    @property
    def reduced_indices(self) -> Tuple[int, ...]:
        """Positions of the present vectors in the 3-slot reduced coordinates."""
        return (0, 2) if self.s_v0_minus_omega is None else (0, 1, 2)

    def vectors(self) -> List[np.ndarray]:
        if self.s_v0_minus_omega is None:
            return [self.omega, self.s_vbar0]
        return [self.omega, self.s_v0_minus_omega, self.s_vbar0]

    def as_matrix(self) -> np.ndarray:
        """
        Stack the basis vectors as columns.

        Returns:
            np.ndarray: N x dim matrix B with orthonormal columns.
        """
        return np.column_stack(self.vectors())

    def projector(self) -> np.ndarray:
        basis = self.as_matrix()
        return basis @ basis.T

    def embed(self, reduced: np.ndarray) -> np.ndarray:
        """
        Map 3-slot reduced coordinates to a full-space vector.

        Args:
            reduced (np.ndarray): Coefficients over (omega, S_V0-omega, S_V0bar).

        Returns:
            np.ndarray: The full-space vector.
        """
        reduced = np.asarray(reduced)
        return self.as_matrix() @ reduced[list(self.reduced_indices)]
