"""
This module contains the spectral analysis of the search Hamiltonian: kappa, beta, the
eigen energies lambda, the couplings delta, the optimal coupling factor and the runtime
and overlap predictions.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.optimize import brentq

from ucpg_search.exceptions import DomainException, IntegrityException
from ucpg_search.graph import UcpgConfig
from ucpg_search.linalg import lowest_gap
from ucpg_search.settings import GAMMA_GRID_POINTS, GAP_REL_TOL
from ucpg_search.spectral.hamiltonian import (
    check_gamma,
    model_couplings,
    split_search_hamiltonian,
)

THREE_LEVEL = "three_level"
TWO_LEVEL = "two_level"


class SpectralData(BaseModel):
    """
    Represents the spectral parameters of the search Hamiltonian at one coupling factor.

    Attributes:
        config (UcpgConfig): The graph.
        path (str): "three_level" for m0 >= 2, "two_level" for m0 = 1.
        gamma (float): Coupling factor the quantities below are evaluated at.
        gamma_opt (float): Optimal coupling factor.
        gamma_formula (float): (N sqrt(alpha (1 - alpha)) beta_plus)^-1.
        gamma_numeric (Optional[float]): Coupling factor from numerical degeneracy matching.
        kappa (float): v3 / v1.
        beta_plus (float): (kappa + sqrt(kappa^2 + 4)) / 2.
        beta_minus (float): (kappa - sqrt(kappa^2 + 4)) / 2.
        v1 (float): S_V0-omega / S_V0bar coupling of H0.
        v2 (float): omega / S_V0bar coupling of H1.
        v3 (float): S_V0bar site energy of H0.
        lambda_plus (float): Energy of e1, beta_plus v1.
        lambda_minus (float): Energy of e2, beta_minus v1.
        delta1 (float): omega / e1 coupling.
        delta2 (float): omega / e2 coupling.
        e1_coeffs (Tuple[float, float]): e1 over (S_V0-omega, S_V0bar).
        e2_coeffs (Tuple[float, float]): e2 over (S_V0-omega, S_V0bar).
        numeric_lambdas (Tuple[float, ...]): Eigenvalues of the H0 block by direct
            diagonalization, ascending.
        model_defect (float): |v1 - exact entry (2,3)| of H_seek.
    """

    model_config = ConfigDict(frozen=True)

    config: UcpgConfig
    path: str
    gamma: float
    gamma_opt: float
    gamma_formula: float
    gamma_numeric: Optional[float]
    kappa: float
    beta_plus: float
    beta_minus: float
    v1: float
    v2: float
    v3: float
    lambda_plus: float
    lambda_minus: float
    delta1: float
    delta2: float
    e1_coeffs: Tuple[float, float]
    e2_coeffs: Tuple[float, float]
    numeric_lambdas: Tuple[float, ...]
    model_defect: float


class AvoidedCrossing(BaseModel):
    """
    Represents the scan of the lowest-two-level gap over a grid of coupling factors.
    """

    model_config = ConfigDict(frozen=True)

    gamma_opt: float
    gap_at_opt: float
    min_gap: float
    argmin_gamma: float
    expected_ratio: float
    passed: bool


def _check_alpha(config: UcpgConfig) -> float:
    alpha = config.alpha
    if not 0.0 < alpha < 1.0:
        raise DomainException(f"alpha must lie in (0, 1), got {alpha} for {config.label()}")
    return alpha


def compute_kappa(config: UcpgConfig) -> float:
    """
    Compute kappa = v3 / v1 = sqrt(1 - alpha)(1 - 1/P) / sqrt(alpha).

    Args:
        config (UcpgConfig): The graph.

    Returns:
        float: kappa, zero for P = 1.

    Raises:
        DomainException: If alpha is 0 or 1.
    """
    alpha = _check_alpha(config)
    return math.sqrt(1.0 - alpha) * (1.0 - 1.0 / config.p_parts) / math.sqrt(alpha)


def compute_betas(kappa: float) -> Tuple[float, float]:
    """
    Compute beta_plus and beta_minus = (kappa +/- sqrt(kappa^2 + 4)) / 2.

    beta_minus is evaluated as -1 / beta_plus, which is the same number without the
    cancellation of the minus branch.

    Args:
        kappa (float): Non-negative kappa.

    Returns:
        Tuple[float, float]: (beta_plus, beta_minus).

    Raises:
        DomainException: If kappa is negative.
    """
    if kappa < 0:
        raise DomainException(f"kappa must be non-negative, got {kappa}")
    beta_plus = (kappa + math.sqrt(kappa * kappa + 4.0)) / 2.0
    return beta_plus, -1.0 / beta_plus


def gamma_formula(config: UcpgConfig) -> float:
    """
    Compute gamma = (N sqrt(alpha (1 - alpha)) beta_plus)^-1, which puts lambda_plus at -1.
    """
    alpha = _check_alpha(config)
    beta_plus, _ = compute_betas(compute_kappa(config))
    return 1.0 / (config.n_total * math.sqrt(alpha * (1.0 - alpha)) * beta_plus)


def _h0_block(config: UcpgConfig, gamma: float) -> np.ndarray:
    v1, _, v3 = model_couplings(config, gamma)
    if config.has_unmarked_rest:
        return np.array([[0.0, v1], [v1, v3]])
    return np.array([[v3]])


def gamma_by_degeneracy(config: UcpgConfig) -> Optional[float]:
    """
    Find gamma such that the lowest level of the H0 block sits at -1, degenerate with the
    marked level, by bracketing and bisection.

    Returns:
        Optional[float]: The coupling factor, or None when the block never reaches -1.
    """

    def detuning(gamma: float) -> float:
        return float(np.linalg.eigvalsh(_h0_block(config, gamma))[0]) + 1.0

    upper = 1.0 / config.n_total
    for _ in range(200):
        if detuning(upper) < 0:
            break
        upper *= 2.0
    else:
        return None
    return brentq(detuning, 0.0, upper, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)


def compute_gamma_opt(config: UcpgConfig) -> float:
    """
    Determine the optimal coupling factor.

    For m0 >= 2 this is the closed form. For m0 = 1 the S_V0-omega state does not exist and
    gamma comes from numerical degeneracy matching on the two-dimensional block; when no
    degeneracy exists (P = 1, m0 = 1) the closed form is used.

    Args:
        config (UcpgConfig): The graph.

    Returns:
        float: The coupling factor.
    """
    if config.has_unmarked_rest:
        return gamma_formula(config)
    numeric = gamma_by_degeneracy(config)
    if numeric is None:
        logging.warning(
            "No level degeneracy for %s, using the closed-form coupling factor", config.label()
        )
        return gamma_formula(config)
    return numeric


def analyze_spectrum(config: UcpgConfig, gamma: Optional[float] = None) -> SpectralData:
    """
    Compute the spectral parameters of the search Hamiltonian.

    Args:
        config (UcpgConfig): The graph.
        gamma (Optional[float]): Coupling factor, the optimal one when None.

    Returns:
        SpectralData: kappa, beta, lambda, delta, the couplings and both gamma paths.
    """
    kappa = compute_kappa(config)
    beta_plus, beta_minus = compute_betas(kappa)
    formula = gamma_formula(config)
    numeric = gamma_by_degeneracy(config)
    gamma_opt = compute_gamma_opt(config)
    gamma = gamma_opt if gamma is None else check_gamma(gamma)

    v1, v2, v3 = model_couplings(config, gamma)
    norm_plus = math.sqrt(beta_plus * beta_plus + 1.0)
    norm_minus = math.sqrt(beta_minus * beta_minus + 1.0)
    if config.has_unmarked_rest:
        model_defect = split_search_hamiltonian(config, gamma).model_defect
        path = THREE_LEVEL
    else:
        model_defect = abs(v1)
        path = TWO_LEVEL
    numeric_lambdas = tuple(float(x) for x in np.linalg.eigvalsh(_h0_block(config, gamma)))

    if config.small_m0:
        logging.warning(
            "%s has a small marked partition, the perturbative split is approximate",
            config.label(),
        )
    logging.info(
        "Spectrum of %s at gamma=%s: kappa=%s beta+=%s", config.label(), gamma, kappa, beta_plus
    )
    return SpectralData(
        config=config,
        path=path,
        gamma=gamma,
        gamma_opt=gamma_opt,
        gamma_formula=formula,
        gamma_numeric=numeric,
        kappa=kappa,
        beta_plus=beta_plus,
        beta_minus=beta_minus,
        v1=v1,
        v2=v2,
        v3=v3,
        lambda_plus=beta_plus * v1,
        lambda_minus=beta_minus * v1,
        delta1=v2 * beta_plus / norm_plus,
        delta2=v2 * beta_minus / norm_minus,
        e1_coeffs=(1.0 / norm_plus, beta_plus / norm_plus),
        e2_coeffs=(1.0 / norm_minus, beta_minus / norm_minus),
        numeric_lambdas=numeric_lambdas,
        model_defect=model_defect,
    )


def _check_same_config(config: UcpgConfig, spectral: SpectralData):
    if spectral.config != config:
        raise IntegrityException(
            f"Spectral data for {spectral.config.label()} used with {config.label()}"
        )


def two_level_runtime(spectral: SpectralData) -> float:
    """
    Compute the transfer time pi / (2 Omega) of the omega / S_V0bar pair, where
    Omega = sqrt(v2^2 + ((v3 + 1) / 2)^2) includes the detuning of the two levels.
    """
    omega = math.hypot(spectral.v2, (spectral.v3 + 1.0) / 2.0)
    if omega == 0:
        return math.inf
    return math.pi / (2.0 * omega)


def predicted_runtime(config: UcpgConfig, spectral: SpectralData) -> float:
    """
    Compute the predicted time of the first success peak.

    On the three-level path this is T_run = pi sqrt(alpha N (beta_plus^2 + 1) / 2). With
    m0 = 1 there is no S_V0-omega state and the walk is a two-level system, so T_run is
    its transfer time.

    Args:
        config (UcpgConfig): The graph.
        spectral (SpectralData): Spectral data of the same graph.

    Returns:
        float: T_run.
    """
    _check_same_config(config, spectral)
    if spectral.path == TWO_LEVEL:
        return two_level_runtime(spectral)
    return math.pi * math.sqrt(
        config.alpha * config.n_total * (spectral.beta_plus**2 + 1.0) / 2.0
    )


def predicted_overlap(config: UcpgConfig, spectral: SpectralData) -> float:
    """
    Compute P_O = |<e1|s>|^2 from the closed form.

    Returns:
        float: The success probability at the peak when starting from |s>.
    """
    _check_same_config(config, spectral)
    beta_sq = spectral.beta_plus**2
    alpha, n_total = config.alpha, config.n_total
    # alpha / beta^2 - 1 / (beta^2 N) = (m0 - 1) / (N beta^2) is never negative
    inner = max(alpha / beta_sq - 1.0 / (beta_sq * n_total), 0.0)
    amplitude = (math.sqrt(inner) + math.sqrt(1.0 - alpha)) / math.sqrt(1.0 + 1.0 / beta_sq)
    return amplitude * amplitude


def direct_overlap(config: UcpgConfig, spectral: SpectralData) -> float:
    """
    Compute |<e1|s>|^2 as an inner product of reduced coordinate vectors.
    """
    _check_same_config(config, spectral)
    n_total, m0 = config.n_total, config.m0
    uniform = np.array([1.0, math.sqrt(m0 - 1), math.sqrt(n_total - m0)]) / math.sqrt(n_total)
    e1 = np.array([0.0, *spectral.e1_coeffs])
    return float(abs(uniform @ e1) ** 2)


def rabi_time(spectral: SpectralData) -> float:
    """
    Compute the two-level transfer time pi / (2 |delta1|).
    """
    if spectral.delta1 == 0:
        return math.inf
    return math.pi / (2.0 * abs(spectral.delta1))


def total_runtime(config: UcpgConfig, spectral: SpectralData) -> float:
    """
    Compute the expected total runtime T_run / P_O of the repeat-until-success search.
    """
    return predicted_runtime(config, spectral) / predicted_overlap(config, spectral)


def gap_profile(config: UcpgConfig, gammas: np.ndarray) -> np.ndarray:
    """
    Compute the gap between the two lowest levels of H0 + H1 for each coupling factor.

    Args:
        config (UcpgConfig): The graph, with m0 >= 2.
        gammas (np.ndarray): Coupling factors.

    Returns:
        np.ndarray: One gap per coupling factor.
    """
    return np.array(
        [lowest_gap(split_search_hamiltonian(config, g).model_matrix) for g in gammas]
    )


def check_avoided_crossing(
    config: UcpgConfig,
    spectral: SpectralData,
    points: int = GAMMA_GRID_POINTS,
    rel_tol: float = GAP_REL_TOL,
) -> AvoidedCrossing:
    """
    Scan the lowest gap over [0.5, 1.5] gamma_opt and compare it with gamma_opt.

    The omega / e1 coupling grows with gamma, so in the two-level picture the gap at the
    level crossing exceeds the minimum gap by sqrt(1 + 4 delta1^2); the check accepts
    that ratio up to rel_tol.

    Args:
        config (UcpgConfig): The graph, with m0 >= 2.
        spectral (SpectralData): Spectral data at gamma_opt.
        points (int): Number of grid points.
        rel_tol (float): Relative slack on the gap ratio.

    Returns:
        AvoidedCrossing: The scan summary and verdict.
    """
    _check_same_config(config, spectral)
    gammas = np.linspace(0.5, 1.5, points) * spectral.gamma_opt
    gaps = gap_profile(config, gammas)
    gap_at_opt = lowest_gap(split_search_hamiltonian(config, spectral.gamma_opt).model_matrix)
    best = int(np.argmin(gaps))
    min_gap = float(gaps[best])
    expected_ratio = math.sqrt(1.0 + 4.0 * spectral.delta1**2)
    passed = gap_at_opt <= expected_ratio * (1.0 + rel_tol) * min_gap
    return AvoidedCrossing(
        gamma_opt=spectral.gamma_opt,
        gap_at_opt=gap_at_opt,
        min_gap=min_gap,
        argmin_gamma=float(gammas[best]),
        expected_ratio=expected_ratio,
        passed=passed,
    )


def classify_case(config: UcpgConfig) -> int:
    """
    Classify a graph into the four optimality regimes.

    Returns:
        int: 1 for P = 1, 2 for alpha ~ 1/N (m0 <= 2), 3 for alpha ~ 1 (m0 >= N - 2P),
        4 otherwise.
    """
    if config.p_parts == 1:
        return 1
    if config.m0 <= 2:
        return 2
    if config.m0 >= config.n_total - 2 * config.p_parts:
        return 3
    return 4
