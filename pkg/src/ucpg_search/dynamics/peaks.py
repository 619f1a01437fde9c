"""
This module contains the measurement of the first success-probability peak and its
comparison with the predicted runtime and overlap.
"""
import logging

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.optimize import minimize_scalar
from scipy.signal import find_peaks

from ucpg_search.dynamics.evolution import EvolutionSeries, probability_function
from ucpg_search.exceptions import SearchWindowException
from ucpg_search.spectral import SpectralData, predicted_overlap, predicted_runtime, rabi_time

# Peaks below this share of the series range are escape-channel ripple.
MIN_PROMINENCE_SHARE = 0.25
FLAT_RANGE = 1e-12


class PeakReport(BaseModel):
    """
    Represents the first success-probability peak against the predictions.

    Attributes:
        t_peak (float): Refined time of the first peak.
        p_peak (float): Success probability at t_peak.
        t_run_predicted (float): Predicted peak time, see predicted_runtime.
        p_o_predicted (float): |<e1|s>|^2 from the closed form.
        ratio_time (float): t_peak / t_run_predicted.
        ratio_prob (float): p_peak / p_o_predicted.
        rabi_time (float): pi / (2 |delta1|).
        ratio_rabi (float): t_peak / rabi_time.
        space (str): Space of the measured series.
        gamma (float): Coupling factor of the measured series.
    """

    model_config = ConfigDict(frozen=True)

    t_peak: float
    p_peak: float
    t_run_predicted: float
    p_o_predicted: float
    ratio_time: float
    ratio_prob: float
    rabi_time: float
    ratio_rabi: float
    space: str
    gamma: float


def first_peak_index(p_success: np.ndarray) -> int:
    """
    Find the first prominent local maximum of a sampled series.

    Args:
        p_success (np.ndarray): Sampled success probability.

    Returns:
        int: Index of the first local maximum whose prominence is at least a quarter of
        the series range.

    Raises:
        SearchWindowException: If the series is flat or has no such maximum.
    """
    spread = float(np.max(p_success) - np.min(p_success)) if p_success.size else 0.0
    if spread <= FLAT_RANGE:
        raise SearchWindowException("Success probability is flat over the sampled window")
    peaks, _ = find_peaks(p_success, prominence=MIN_PROMINENCE_SHARE * spread)
    if peaks.size == 0:
        raise SearchWindowException("No local maximum of the success probability in the window")
    return int(peaks[0])


def refine_peak(series: EvolutionSeries, index: int, xtol: float = 1e-6):
    """
    Refine a sampled maximum by golden-section search on the exact p(t).

    Args:
        series (EvolutionSeries): The sampled series.
        index (int): Index of the sampled maximum, strictly inside the series.
        xtol (float): Relative tolerance on the peak time.

    Returns:
        Tuple[float, float]: Refined (t_peak, p_peak).
    """
    times = series.times
    probability = probability_function(series.hamiltonian, series.initial_state)

    def negative_probability(t):
        return -probability(t)

    bracket = (times[index - 1], times[index], times[index + 1])
    try:
        result = minimize_scalar(
            negative_probability, bracket=bracket, method="golden", tol=xtol
        )
    except ValueError:
        # a plateau between samples is not a strict bracket
        result = minimize_scalar(
            negative_probability,
            bounds=(bracket[0], bracket[2]),
            method="bounded",
            options={"xatol": xtol * max(bracket[1], 1.0)},
        )
    t_peak = float(result.x)
    p_peak = -float(result.fun)
    if p_peak < series.p_success[index]:
        return float(times[index]), float(series.p_success[index])
    return t_peak, p_peak


def measure_peak(series: EvolutionSeries, spectral: SpectralData) -> PeakReport:
    """
    Measure the first peak of a series and compare it with the predictions.

    Args:
        series (EvolutionSeries): Series spanning at least [0, 2 T_run].
        spectral (SpectralData): Spectral data at the optimal coupling factor.

    Returns:
        PeakReport: Measured and predicted time and probability.

    Raises:
        SearchWindowException: If the window is too short or holds no peak.
    """
    t_run = predicted_runtime(series.config, spectral)
    p_o = predicted_overlap(series.config, spectral)
    if series.times.size < 3 or series.times[-1] < 2.0 * t_run * (1.0 - 1e-12):
        raise SearchWindowException(
            f"Series ends at t={series.times[-1] if series.times.size else 0.0}, "
            f"needs at least 2 T_run = {2.0 * t_run}"
        )
    index = first_peak_index(series.p_success)
    t_peak, p_peak = refine_peak(series, index)
    rabi = rabi_time(spectral)
    logging.info(
        "Peak of %s at t=%s with p=%s (predicted %s, %s)",
        series.config.label(),
        t_peak,
        p_peak,
        t_run,
        p_o,
    )
    return PeakReport(
        t_peak=t_peak,
        p_peak=p_peak,
        t_run_predicted=t_run,
        p_o_predicted=p_o,
        ratio_time=t_peak / t_run,
        ratio_prob=p_peak / p_o,
        rabi_time=rabi,
        ratio_rabi=t_peak / rabi,
        space=series.space.value,
        gamma=series.gamma,
    )
