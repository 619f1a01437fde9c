"""
This module contains the end-to-end pipeline: dimensionality reduction, Hamiltonian
construction, basis change, coupling factor determination and the overlap check.
"""
import logging
import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from ucpg_search.dynamics.evolution import (
    EvolutionSeries,
    build_full_search_hamiltonian,
    evolve,
    max_deviation,
    sample_times,
    uniform_initial_state,
)
from ucpg_search.dynamics.peaks import PeakReport, measure_peak
from ucpg_search.exceptions import PipelineException, QuantumWalkException
from ucpg_search.graph import (
    UcpgConfig,
    build_adjacency,
    build_collapsed_basis,
    closure_residuals,
    make_config,
)
from ucpg_search.linalg import asymmetry
from ucpg_search.reduction import (
    ReducedHamiltonian,
    SubspaceCertificate,
    certify_same_subspace,
    reduce_closed_form,
    reduce_krylov,
)
from ucpg_search.settings import (
    CLOSURE_TOL,
    DEFAULT_SAMPLES,
    DEFAULT_WINDOW_FACTOR,
    DEGENERACY_TOL,
    DYNAMICS_TOL,
    OVERLAP_FORMULA_TOL,
    SYMMETRY_TOL,
    dense_guard,
)
from ucpg_search.spectral import (
    SearchHamiltonian,
    SpectralData,
    analyze_spectrum,
    build_model_hamiltonian,
    build_search_hamiltonian,
    direct_overlap,
    predicted_overlap,
    predicted_runtime,
    transform_to_eigenbasis,
)

STAGES = (
    "configuration",
    "dimensionality_reduction",
    "hamiltonian_construction",
    "basis_change",
    "ctqw_initialization",
    "constant_overlap",
)


@contextmanager
def pipeline_stage(stage: str):
    """
    Label any toolkit error raised inside the block with the pipeline stage.
    """
    logging.info("Pipeline stage %s", stage)
    try:
        yield
    except PipelineException:
        raise
    except QuantumWalkException as e:
        logging.error("Pipeline stage %s failed: %s", stage, e)
        raise PipelineException(stage, str(e)) from e


@dataclass(eq=False)
class PipelineBundle:
    """
    All artefacts of one pipeline run.
    """

    config: UcpgConfig
    reduced: ReducedHamiltonian
    unit_hamiltonian: SearchHamiltonian
    spectral: SpectralData
    search_hamiltonian: SearchHamiltonian
    eigen_hamiltonian: Optional[SearchHamiltonian]
    series_reduced: EvolutionSeries
    peak_report: PeakReport
    series_full: Optional[EvolutionSeries] = None
    certificates: List[SubspaceCertificate] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    measurements: Dict[str, float] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self):
        return {
            "config": self.config.model_dump(mode="json"),
            "h_ra": self.reduced.to_dict(),
            "spectral": self.spectral.model_dump(mode="json"),
            "h_seek": self.search_hamiltonian.to_dict(),
            "h_seek_eigen": (
                self.eigen_hamiltonian.to_dict() if self.eigen_hamiltonian is not None else None
            ),
            "peak_report": self.peak_report.model_dump(mode="json"),
            "certificates": [c.model_dump(mode="json") for c in self.certificates],
            "checks": dict(self.checks),
            "measurements": dict(self.measurements),
            "all_passed": self.all_passed,
        }


def _resolve_config(config: Union[UcpgConfig, Tuple[int, int, int]]) -> UcpgConfig:
    if isinstance(config, UcpgConfig):
        return config
    n_total, p_parts, m0 = config
    return make_config(n_total, p_parts, m0)


def run_pipeline(
    config: Union[UcpgConfig, Tuple[int, int, int]],
    include_full: Optional[bool] = None,
    samples: int = DEFAULT_SAMPLES,
    window_factor: float = DEFAULT_WINDOW_FACTOR,
) -> PipelineBundle:
    """
    Run the reduction and coupling-factor determination end to end.

    Args:
        config (Union[UcpgConfig, Tuple[int, int, int]]): A config or an (N, P, m0) triple.
        include_full (Optional[bool]): Also run the full-space oracle; by default it runs
            when N is within the dense guard.
        samples (int): Number of time samples.
        window_factor (float): Window length in units of T_run.

    Returns:
        PipelineBundle: Every artefact and the pass/fail of each check.

    Raises:
        PipelineException: If a stage fails, labelled with the stage name.
    """
    checks: Dict[str, bool] = {}
    measurements: Dict[str, float] = {}
    certificates: List[SubspaceCertificate] = []

    with pipeline_stage("configuration"):
        config = _resolve_config(config)
    if include_full is None:
        include_full = config.n_total <= dense_guard()

    with pipeline_stage("dimensionality_reduction"):
        reduced = reduce_closed_form(config)
        adjacency = None
        if include_full:
            adjacency = build_adjacency(config)
            basis = build_collapsed_basis(config, adjacency, allow_two_dimensional=True)
            closure = max(closure_residuals(adjacency, basis))
            measurements["closure_residual"] = closure
            checks["closure"] = closure <= CLOSURE_TOL
            krylov = reduce_krylov(adjacency, basis.omega, max_dim=3)
            certificate = certify_same_subspace(reduced, basis, krylov, adjacency=adjacency)
            certificates.append(certificate)
            checks["subspace_certificate"] = certificate.passed

    with pipeline_stage("hamiltonian_construction"):
        # H_seek is linear in gamma; the unit-coupling form carries the structure
        unit_hamiltonian = build_search_hamiltonian(reduced, 1.0)

    with pipeline_stage("basis_change"):
        unit_spectral = analyze_spectrum(config, gamma=1.0)
        if config.has_unmarked_rest:
            unit_model = build_model_hamiltonian(config, 1.0)
            unit_eigen = transform_to_eigenbasis(unit_model, unit_spectral)
            measurements["eigenbasis_asymmetry"] = asymmetry(unit_eigen.matrix)
            checks["eigenbasis_symmetry"] = measurements["eigenbasis_asymmetry"] <= SYMMETRY_TOL

    with pipeline_stage("ctqw_initialization"):
        spectral = analyze_spectrum(config)
        search_hamiltonian = build_search_hamiltonian(reduced, spectral.gamma_opt)
        eigen_hamiltonian = None
        if config.has_unmarked_rest:
            model = build_model_hamiltonian(config, spectral.gamma)
            eigen_hamiltonian = transform_to_eigenbasis(model, spectral)
            measurements["degeneracy"] = abs(spectral.lambda_plus + 1.0)
            checks["degeneracy"] = measurements["degeneracy"] <= DEGENERACY_TOL
        t_run = predicted_runtime(config, spectral)
        times = sample_times(t_run, samples, window_factor)
        psi0 = uniform_initial_state(config, with_full=include_full)
        series_reduced = evolve(search_hamiltonian, psi0, times)
        series_full = None
        if include_full:
            full_hamiltonian = build_full_search_hamiltonian(adjacency, spectral.gamma_opt)
            series_full = evolve(full_hamiltonian, psi0, times)
            deviation = max_deviation(series_full, series_reduced)
            measurements["full_reduced_deviation"] = deviation
            checks["full_reduced_equivalence"] = deviation <= DYNAMICS_TOL

    with pipeline_stage("constant_overlap"):
        overlap_gap = abs(predicted_overlap(config, spectral) - direct_overlap(config, spectral))
        measurements["overlap_formula_deviation"] = overlap_gap
        checks["overlap_formula"] = overlap_gap <= OVERLAP_FORMULA_TOL
        peak_report = measure_peak(series_reduced, spectral)
        measurements["total_runtime"] = (
            t_run / peak_report.p_o_predicted if peak_report.p_o_predicted > 0 else math.inf
        )

    bundle = PipelineBundle(
        config=config,
        reduced=reduced,
        unit_hamiltonian=unit_hamiltonian,
        spectral=spectral,
        search_hamiltonian=search_hamiltonian,
        eigen_hamiltonian=eigen_hamiltonian,
        series_reduced=series_reduced,
        peak_report=peak_report,
        series_full=series_full,
        certificates=certificates,
        checks=checks,
        measurements=measurements,
    )
    if not bundle.all_passed:
        failed = sorted(name for name, ok in checks.items() if not ok)
        logging.warning("Pipeline checks failed for %s: %s", config.label(), failed)
    return bundle
