"""
This package contains the time evolution of the walker, the peak measurement and the
end-to-end pipeline.
"""
from .evolution import (
    EvolutionSeries,
    FullSearchHamiltonian,
    InitialState,
    Space,
    build_full_search_hamiltonian,
    evolve,
    evolve_amplitudes,
    max_deviation,
    probability_function,
    sample_times,
    success_probability,
    time_reversal_deviation,
    uniform_initial_state,
)
from .peaks import PeakReport, first_peak_index, measure_peak, refine_peak
from .pipeline import STAGES, PipelineBundle, pipeline_stage, run_pipeline

__all__ = [
    "EvolutionSeries",
    "FullSearchHamiltonian",
    "InitialState",
    "Space",
    "build_full_search_hamiltonian",
    "evolve",
    "evolve_amplitudes",
    "max_deviation",
    "probability_function",
    "sample_times",
    "success_probability",
    "time_reversal_deviation",
    "uniform_initial_state",
    "PeakReport",
    "first_peak_index",
    "measure_peak",
    "refine_peak",
    "STAGES",
    "PipelineBundle",
    "pipeline_stage",
    "run_pipeline",
]
