"""
This module contains the time evolution of the walker in reduced and full space.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Union

import numpy as np
import pandas as pd

from ucpg_search.exceptions import DomainException, IntegrityException
from ucpg_search.graph import (
    FullAdjacency,
    UcpgConfig,
    check_dense_capacity,
    uniform_superposition,
)
from ucpg_search.linalg import (
    check_symmetric,
    propagate,
    propagate_component,
    spectral_decomposition,
)
from ucpg_search.settings import DEFAULT_SAMPLES, DEFAULT_WINDOW_FACTOR, NORM_TOL
from ucpg_search.spectral import HamiltonianBasis, SearchHamiltonian
from ucpg_search.spectral.hamiltonian import check_gamma


class Space(str, Enum):
    """
    Hilbert space an evolution runs in.
    """

    REDUCED = "reduced"
    FULL = "full"


@dataclass(frozen=True, eq=False)
class FullSearchHamiltonian:
    """
    The dense N x N search Hamiltonian -gamma H_a - |omega><omega|.
    """

    matrix: np.ndarray
    gamma: float
    config: UcpgConfig
    marked_index: int = 0


@dataclass(frozen=True, eq=False)
class InitialState:
    """
    The initial state of the walker.

    Attributes:
        reduced_coeffs (np.ndarray): Amplitudes over (omega, S_V0-omega, S_V0bar).
        full_vector (Optional[np.ndarray]): The same state in full space, if built.
    """

    reduced_coeffs: np.ndarray
    full_vector: Optional[np.ndarray] = None

    def __post_init__(self):
        for vector in (self.reduced_coeffs, self.full_vector):
            if vector is None:
                continue
            norm = np.linalg.norm(vector)
            if abs(norm - 1.0) > NORM_TOL:
                raise DomainException(f"Initial state must be normalized, got norm {norm:.12g}")


@dataclass(frozen=True, eq=False)
class EvolutionSeries:
    """
    Sampled success probability |<omega|psi(t)>|^2.

    Attributes:
        times (np.ndarray): Ordered sample times.
        p_success (np.ndarray): Success probability per sample.
        space (Space): Space the evolution ran in.
        config (UcpgConfig): The graph.
        gamma (float): Coupling factor.
        max_norm_deviation (float): Largest | ||psi(t)|| - 1 | over the samples.
        hamiltonian: The Hamiltonian that produced the series.
        initial_state (InitialState): The initial state.
    """

    times: np.ndarray
    p_success: np.ndarray
    space: Space
    config: UcpgConfig
    gamma: float
    max_norm_deviation: float
    hamiltonian: Union[SearchHamiltonian, FullSearchHamiltonian]
    initial_state: InitialState

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"t": self.times, "p_success": self.p_success})


def sample_times(
    t_run: float, samples: int = DEFAULT_SAMPLES, window_factor: float = DEFAULT_WINDOW_FACTOR
) -> np.ndarray:
    """
    Get uniform sample times on [0, window_factor * t_run].

    Returns:
        np.ndarray: samples times, just [0] when samples is 1.
    """
    if samples < 1:
        raise DomainException(f"At least one sample is needed, got {samples}")
    return np.linspace(0.0, window_factor * t_run, samples)


def uniform_initial_state(config: UcpgConfig, with_full: bool = False) -> InitialState:
    """
    Get the uniform superposition |s> = (|omega> + sqrt(m0 - 1)|S_V0-omega>
    + sqrt(N - m0)|S_V0bar>) / sqrt(N).

    Args:
        config (UcpgConfig): The graph.
        with_full (bool): Also build the full-space vector.

    Returns:
        InitialState: The uniform superposition.
    """
    n_total, m0 = config.n_total, config.m0
    reduced = np.array(
        [1.0, np.sqrt(m0 - 1), np.sqrt(n_total - m0)], dtype=complex
    ) / np.sqrt(n_total)
    full = uniform_superposition(config).astype(complex) if with_full else None
    return InitialState(reduced_coeffs=reduced, full_vector=full)


def build_full_search_hamiltonian(
    adjacency: FullAdjacency, gamma: float
) -> FullSearchHamiltonian:
    """
    Build -gamma H_a - |omega><omega| as a dense matrix.

    Args:
        adjacency (FullAdjacency): The adjacency Hamiltonian.
        gamma (float): Coupling factor.

    Returns:
        FullSearchHamiltonian: The dense search Hamiltonian.

    Raises:
        CapacityException: If N exceeds the dense guard.
    """
    check_dense_capacity(adjacency.size)
    gamma = check_gamma(gamma)
    matrix = -gamma * adjacency.matrix
    matrix[adjacency.marked_index, adjacency.marked_index] -= 1.0
    return FullSearchHamiltonian(
        matrix=matrix,
        gamma=gamma,
        config=adjacency.config,
        marked_index=adjacency.marked_index,
    )


def _start_vector(h, psi0: InitialState) -> np.ndarray:
    if isinstance(h, SearchHamiltonian):
        if h.basis != HamiltonianBasis.COLLAPSED:
            raise IntegrityException("Reduced evolution expects the collapsed basis")
        return psi0.reduced_coeffs
    if psi0.full_vector is None:
        raise IntegrityException("Full-space evolution needs the full initial vector")
    if psi0.full_vector.shape[0] != h.matrix.shape[0]:
        raise IntegrityException(
            f"Initial vector of length {psi0.full_vector.shape[0]} does not match "
            f"Hamiltonian size {h.matrix.shape[0]}"
        )
    return psi0.full_vector


def _marked_index(h) -> int:
    return 0 if isinstance(h, SearchHamiltonian) else h.marked_index


def evolve(
    h: Union[SearchHamiltonian, FullSearchHamiltonian],
    psi0: InitialState,
    times: np.ndarray,
) -> EvolutionSeries:
    """
    Evolve the walker exactly through the spectral decomposition of H.

    Args:
        h (Union[SearchHamiltonian, FullSearchHamiltonian]): Hermitian Hamiltonian.
        psi0 (InitialState): Normalized initial state.
        times (np.ndarray): Sample times.

    Returns:
        EvolutionSeries: Success probability per sample.

    Raises:
        DomainException: If H is not Hermitian.
        IntegrityException: If the norm of psi(t) drifts.
    """
    check_symmetric(h.matrix)
    times = np.asarray(times, dtype=float)
    states = propagate(h.matrix, _start_vector(h, psi0), times)
    norm_deviation = float(np.max(np.abs(np.linalg.norm(states, axis=1) - 1.0)))
    if norm_deviation > NORM_TOL:
        logging.error("Norm drift %s during evolution of %s", norm_deviation, h.config.label())
        raise IntegrityException(f"Evolution lost unitarity: norm deviation {norm_deviation:.3e}")
    p_success = np.clip(np.abs(states[:, _marked_index(h)]) ** 2, 0.0, 1.0)
    space = Space.REDUCED if isinstance(h, SearchHamiltonian) else Space.FULL
    logging.info(
        "Evolved %s in %s space over %s samples", h.config.label(), space.value, times.size
    )
    return EvolutionSeries(
        times=times,
        p_success=p_success,
        space=space,
        config=h.config,
        gamma=h.gamma,
        max_norm_deviation=norm_deviation,
        hamiltonian=h,
        initial_state=psi0,
    )


def evolve_amplitudes(
    h: Union[SearchHamiltonian, FullSearchHamiltonian],
    psi0: InitialState,
    times: np.ndarray,
) -> np.ndarray:
    """
    Evolve the walker and keep the amplitude on the marked vertex.

    Returns:
        np.ndarray: <omega|psi(t)> per sample.
    """
    return propagate_component(h.matrix, _start_vector(h, psi0), times, index=_marked_index(h))


def success_probability(
    h: Union[SearchHamiltonian, FullSearchHamiltonian], psi0: InitialState, t: float
) -> float:
    return float(abs(evolve_amplitudes(h, psi0, np.array([t]))[0]) ** 2)


def probability_function(
    h: Union[SearchHamiltonian, FullSearchHamiltonian], psi0: InitialState
) -> Callable[[float], float]:
    """
    Diagonalize H once and return t -> |<omega|psi(t)>|^2.
    """
    eigenvalues, eigenvectors = spectral_decomposition(h.matrix)
    weights = (eigenvectors.conj().T @ _start_vector(h, psi0)) * eigenvectors[_marked_index(h), :]

    def probability(t: float) -> float:
        return float(abs(np.exp(-1j * eigenvalues * t) @ weights) ** 2)

    return probability


def time_reversal_deviation(
    h: Union[SearchHamiltonian, FullSearchHamiltonian],
    psi0: InitialState,
    times: np.ndarray,
) -> float:
    """
    Compare p(t) with the probability of the conjugated amplitudes evolved backwards.

    For real symmetric H and real psi0, psi(-t) is the complex conjugate of psi(t), so both
    probabilities agree.

    Returns:
        float: Largest absolute difference.
    """
    forward = evolve_amplitudes(h, psi0, times)
    backward = np.conj(evolve_amplitudes(h, psi0, -np.asarray(times, dtype=float)))
    return float(np.max(np.abs(np.abs(forward) ** 2 - np.abs(backward) ** 2)))


def max_deviation(first: EvolutionSeries, second: EvolutionSeries) -> float:
    """
    Get the largest pointwise difference between two series on the same time grid.
    """
    if first.times.shape != second.times.shape or not np.array_equal(first.times, second.times):
        raise IntegrityException("Series are sampled on different time grids")
    return float(np.max(np.abs(first.p_success - second.p_success)))
