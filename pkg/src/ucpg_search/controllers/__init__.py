"""
This package contains the command implementations behind the CLI.
"""
from .run_controller import (
    BOTH,
    analyze_payload,
    evolve_config,
    load_config,
    payload_to_frame,
    reduce_payload,
)
from .sweep_controller import (
    MIN_FIT_POINTS,
    ScalingFit,
    SweepCase,
    SweepRow,
    case_config,
    fit_scaling,
    rows_to_frame,
    run_sweep,
    sweep_point,
)
from .verify_controller import (
    DEFAULT_GRID_MAX_N,
    CheckResult,
    Tolerances,
    VerifyReport,
    grid_configs,
    run_verify,
    summarize,
)

__all__ = [
    "BOTH",
    "analyze_payload",
    "evolve_config",
    "load_config",
    "payload_to_frame",
    "reduce_payload",
    "MIN_FIT_POINTS",
    "ScalingFit",
    "SweepCase",
    "SweepRow",
    "case_config",
    "fit_scaling",
    "rows_to_frame",
    "run_sweep",
    "sweep_point",
    "DEFAULT_GRID_MAX_N",
    "CheckResult",
    "Tolerances",
    "VerifyReport",
    "grid_configs",
    "run_verify",
    "summarize",
]
