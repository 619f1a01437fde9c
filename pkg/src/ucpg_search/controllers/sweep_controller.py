"""
This module contains the scaling sweep: reduced-space peaks over a list of sizes and a
log-log fit of the peak time against N.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict
from scipy.stats import linregress
from tqdm import tqdm

from ucpg_search.dynamics import evolve, measure_peak, sample_times, uniform_initial_state
from ucpg_search.exceptions import ConfigurationException, FitException
from ucpg_search.graph import UcpgConfig, make_config
from ucpg_search.reduction import reduce_closed_form
from ucpg_search.settings import DEFAULT_SAMPLES, DEFAULT_WINDOW_FACTOR
from ucpg_search.special_cases import SpecialCase, instantiate
from ucpg_search.spectral import analyze_spectrum, build_search_hamiltonian, predicted_runtime

MIN_FIT_POINTS = 3


class SweepCase(str, Enum):
    """
    Parameterizations of N the sweep can run.

    case1..case4 are the four optimality regimes: P = 1 with alpha = 1/2, the complete
    graph, P = 2 with m1 = 1, and P = 2 with alpha = 1/2.
    """

    COMPLETE = "complete"
    BIPARTITE = "bipartite"
    STAR = "star"
    CUSTOM = "custom"
    CASE1 = "case1"
    CASE2 = "case2"
    CASE3 = "case3"
    CASE4 = "case4"


class SweepRow(BaseModel):
    """
    Represents the measured peak of one sweep point.
    """

    model_config = ConfigDict(frozen=True)

    n_total: int
    p_parts: int
    m0: int
    alpha: float
    gamma: float
    t_peak: float
    p_peak: float
    t_run_predicted: float
    p_o_predicted: float
    ratio_time: float
    ratio_prob: float


class ScalingFit(BaseModel):
    """
    Represents the log-log fit of t_peak against N.

    Attributes:
        case (str): Sweep parameterization.
        points (int): Number of sweep points.
        slope (float): Fitted exponent.
        intercept (float): Fitted log prefactor.
        stderr (float): Standard error of the slope.
        r_value (float): Correlation coefficient.
        p_peak_spread (float): (max - min) / max of the measured peak probabilities.
    """

    model_config = ConfigDict(frozen=True)

    case: str
    points: int
    slope: float
    intercept: float
    stderr: float
    r_value: float
    p_peak_spread: float


def _share(n_total: int, fraction: float) -> int:
    return int(round(fraction * n_total))


def case_config(
    case: SweepCase, n_total: int, alpha: Optional[float] = None, p_parts: Optional[int] = None
) -> UcpgConfig:
    """
    Get the config of a sweep parameterization at size N.

    Args:
        case (SweepCase): The parameterization.
        n_total (int): Number of vertices.
        alpha (Optional[float]): Marked-partition share for bipartite and custom.
        p_parts (Optional[int]): Number of unmarked partitions for custom.

    Returns:
        UcpgConfig: The config closest to the requested shares.

    Raises:
        ConfigurationException: If the shares leave an empty partition.
    """
    case = SweepCase(case)
    if case in (SweepCase.COMPLETE, SweepCase.CASE2):
        return instantiate(SpecialCase.COMPLETE, n_total)
    if case == SweepCase.STAR:
        return instantiate(SpecialCase.STAR, n_total)
    if case == SweepCase.CASE1:
        return make_config(n_total, 1, max(1, n_total // 2))
    if case == SweepCase.CASE3:
        return make_config(n_total, 2, n_total - 2)
    if case == SweepCase.CASE4:
        m1 = _share(n_total, 0.25)
        return make_config(n_total, 2, n_total - 2 * m1)

    share = 0.5 if alpha is None else alpha
    if not 0.0 < share < 1.0:
        raise ConfigurationException(f"alpha must lie in (0, 1), got {share}")
    if case == SweepCase.BIPARTITE:
        m0 = min(max(_share(n_total, share), 1), n_total - 1)
        return make_config(n_total, 1, m0)
    if p_parts is None:
        raise ConfigurationException("The custom sweep needs --p")
    m1 = _share(n_total, (1.0 - share) / p_parts)
    m0 = n_total - p_parts * m1
    if m1 < 1 or m0 < 1:
        raise ConfigurationException(
            f"alpha={share} with P={p_parts} leaves an empty partition at N={n_total}"
        )
    return make_config(n_total, p_parts, m0)


def sweep_point(
    config: UcpgConfig,
    samples: int = DEFAULT_SAMPLES,
    window_factor: float = DEFAULT_WINDOW_FACTOR,
    gamma: Optional[float] = None,
) -> SweepRow:
    """
    Measure the first peak of one config in reduced space.
    """
    spectral = analyze_spectrum(config)
    coupling = spectral.gamma_opt if gamma is None else gamma
    hamiltonian = build_search_hamiltonian(reduce_closed_form(config), coupling)
    times = sample_times(predicted_runtime(config, spectral), samples, window_factor)
    series = evolve(hamiltonian, uniform_initial_state(config), times)
    report = measure_peak(series, spectral)
    return SweepRow(
        n_total=config.n_total,
        p_parts=config.p_parts,
        m0=config.m0,
        alpha=config.alpha,
        gamma=coupling,
        t_peak=report.t_peak,
        p_peak=report.p_peak,
        t_run_predicted=report.t_run_predicted,
        p_o_predicted=report.p_o_predicted,
        ratio_time=report.ratio_time,
        ratio_prob=report.ratio_prob,
    )


def run_sweep(
    configs: Sequence[UcpgConfig],
    jobs: int = 1,
    samples: int = DEFAULT_SAMPLES,
    progress: bool = False,
) -> List[SweepRow]:
    """
    Measure every sweep point, in parallel when jobs > 1.

    Returns:
        List[SweepRow]: One row per config, in input order.
    """

    def measure(config):
        return sweep_point(config, samples=samples)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as executor:
        rows = list(
            tqdm(
                executor.map(measure, configs),
                total=len(configs),
                desc="sweep",
                disable=not progress,
            )
        )
    logging.info("Swept %s points", len(rows))
    return rows


def fit_scaling(rows: Sequence[SweepRow], case: str = SweepCase.CUSTOM.value) -> ScalingFit:
    """
    Fit log t_peak = slope log N + intercept by least squares.

    Raises:
        FitException: If fewer than 3 distinct sizes are given.
    """
    sizes = np.array([row.n_total for row in rows], dtype=float)
    if np.unique(sizes).size < MIN_FIT_POINTS:
        raise FitException(
            f"A scaling fit needs at least {MIN_FIT_POINTS} distinct N values, got {sizes.size}"
        )
    t_peaks = np.array([row.t_peak for row in rows])
    p_peaks = np.array([row.p_peak for row in rows])
    fit = linregress(np.log(sizes), np.log(t_peaks))
    spread = float((p_peaks.max() - p_peaks.min()) / p_peaks.max())
    logging.info("Scaling fit for %s: slope %s +/- %s", case, fit.slope, fit.stderr)
    return ScalingFit(
        case=case,
        points=len(rows),
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        stderr=float(fit.stderr),
        r_value=float(fit.rvalue),
        p_peak_spread=spread,
    )


def rows_to_frame(rows: Sequence[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame(
        [row.model_dump() for row in rows], columns=list(SweepRow.model_fields)
    )
