"""
This module contains the single-configuration commands: reduce, analyze and evolve.
"""
import logging
from typing import Dict, Optional

import numpy as np
import pandas as pd

from ucpg_search.dynamics import (
    EvolutionSeries,
    Space,
    build_full_search_hamiltonian,
    evolve,
    max_deviation,
    pipeline_stage,
    sample_times,
    uniform_initial_state,
)
from ucpg_search.graph import UcpgConfig, build_adjacency, check_dense_capacity, make_config
from ucpg_search.reduction import reduce_closed_form
from ucpg_search.settings import DEFAULT_SAMPLES, GAMMA_GRID_POINTS
from ucpg_search.spectral import (
    analyze_spectrum,
    build_search_hamiltonian,
    check_avoided_crossing,
    classify_case,
    gap_profile,
    predicted_overlap,
    predicted_runtime,
    rabi_time,
    total_runtime,
)

BOTH = "both"


def load_config(n_total: int, p_parts: int, m0: int) -> UcpgConfig:
    with pipeline_stage("configuration"):
        return make_config(n_total, p_parts, m0)


def reduce_payload(n_total: int, p_parts: int, m0: int) -> Dict:
    """
    Build H_ra and the spectral summary of one configuration.

    Returns:
        dict: config, h_ra, the spectral parameters, gamma_opt and the predictions.

    Raises:
        PipelineException: If a stage fails, labelled with the stage name.
    """
    config = load_config(n_total, p_parts, m0)
    with pipeline_stage("dimensionality_reduction"):
        reduced = reduce_closed_form(config)
    with pipeline_stage("basis_change"):
        spectral = analyze_spectrum(config)
    with pipeline_stage("constant_overlap"):
        t_run = predicted_runtime(config, spectral)
        p_o = predicted_overlap(config, spectral)
        return {
            "config": config.model_dump(mode="json"),
            "h_ra": reduced.matrix.tolist(),
            "basis_labels": list(reduced.basis_labels),
            "null_middle_row": not config.has_unmarked_rest,
            "path": spectral.path,
            "case": classify_case(config),
            "kappa": spectral.kappa,
            "beta_plus": spectral.beta_plus,
            "beta_minus": spectral.beta_minus,
            "lambda_plus": spectral.lambda_plus,
            "lambda_minus": spectral.lambda_minus,
            "gamma_opt": spectral.gamma_opt,
            "gamma_formula": spectral.gamma_formula,
            "gamma_numeric": spectral.gamma_numeric,
            "delta1": spectral.delta1,
            "delta2": spectral.delta2,
            "t_run": t_run,
            "p_o": p_o,
            "total_runtime": total_runtime(config, spectral),
            "rabi_time": rabi_time(spectral),
            "model_defect": spectral.model_defect,
        }


def payload_to_frame(payload: Dict) -> pd.DataFrame:
    """
    Flatten a reduce payload into quantity,value rows.
    """
    rows = []
    for i, row in enumerate(payload["h_ra"]):
        for j, value in enumerate(row):
            rows.append({"quantity": f"h_ra_{i + 1}{j + 1}", "value": value})
    for key, value in payload.items():
        if key in ("config", "h_ra", "basis_labels"):
            continue
        rows.append({"quantity": key, "value": value})
    return pd.DataFrame(rows, columns=["quantity", "value"])


def analyze_payload(
    n_total: int,
    p_parts: int,
    m0: int,
    gamma: Optional[float] = None,
    points: int = GAMMA_GRID_POINTS,
):
    """
    Get the spectral data at one coupling factor and the gap profile around gamma_opt.

    Returns:
        Tuple[dict, Optional[pd.DataFrame]]: The spectral data with the avoided-crossing
        scan, and the gamma,gap profile (None on the two-level path).
    """
    config = load_config(n_total, p_parts, m0)
    with pipeline_stage("basis_change"):
        spectral = analyze_spectrum(config, gamma)
    payload = {"spectral": spectral.model_dump(mode="json"), "avoided_crossing": None}
    if not config.has_unmarked_rest:
        logging.warning("No gap profile on the two-level path for %s", config.label())
        return payload, None
    with pipeline_stage("ctqw_initialization"):
        at_opt = spectral if spectral.gamma == spectral.gamma_opt else analyze_spectrum(config)
        crossing = check_avoided_crossing(config, at_opt, points=points)
        gammas = np.linspace(0.5, 1.5, points) * at_opt.gamma_opt
        profile = pd.DataFrame({"gamma": gammas, "gap": gap_profile(config, gammas)})
    payload["avoided_crossing"] = crossing.model_dump(mode="json")
    return payload, profile


def evolve_config(
    n_total: int,
    p_parts: int,
    m0: int,
    gamma: Optional[float] = None,
    t_max: Optional[float] = None,
    samples: int = DEFAULT_SAMPLES,
    space: str = Space.REDUCED.value,
):
    """
    Evolve |s> under H_seek in the requested space(s).

    Args:
        n_total (int): Number of vertices.
        p_parts (int): Number of unmarked partitions.
        m0 (int): Size of the marked partition.
        gamma (Optional[float]): Coupling factor, gamma_opt when None.
        t_max (Optional[float]): End of the window, 3 T_run when None.
        samples (int): Number of time samples.
        space (str): "reduced", "full" or "both".

    Returns:
        Tuple[Dict[str, EvolutionSeries], Optional[float]]: Series per space and, for
        "both", the largest pointwise deviation.

    Raises:
        PipelineException: If a stage fails; a full-space request above the dense guard
            fails in ctqw_initialization with the capacity message.
    """
    config = load_config(n_total, p_parts, m0)
    spaces = [Space.REDUCED.value, Space.FULL.value] if space == BOTH else [space]
    with pipeline_stage("ctqw_initialization"):
        if Space.FULL.value in spaces:
            check_dense_capacity(config.n_total)
        spectral = analyze_spectrum(config)
        coupling = spectral.gamma_opt if gamma is None else gamma
        if t_max is None:
            times = sample_times(predicted_runtime(config, spectral), samples)
        else:
            times = sample_times(t_max, samples, window_factor=1.0)
        psi0 = uniform_initial_state(config, with_full=Space.FULL.value in spaces)
        series: Dict[str, EvolutionSeries] = {}
        if Space.REDUCED.value in spaces:
            hamiltonian = build_search_hamiltonian(reduce_closed_form(config), coupling)
            series[Space.REDUCED.value] = evolve(hamiltonian, psi0, times)
        if Space.FULL.value in spaces:
            full = build_full_search_hamiltonian(build_adjacency(config), coupling)
            series[Space.FULL.value] = evolve(full, psi0, times)
    deviation = None
    if len(series) == 2:
        deviation = max_deviation(series[Space.FULL.value], series[Space.REDUCED.value])
        logging.info("Full/reduced deviation for %s: %s", config.label(), deviation)
    return series, deviation

