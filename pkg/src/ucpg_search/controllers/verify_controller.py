"""
This module contains the invariant suite behind the verify command: subspace
certificates, spectral identities, full/reduced equivalence, overlap constancy, detuning
and the special cases, each reported as a machine-readable check.
"""
import logging
import math
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from ucpg_search.controllers.sweep_controller import SweepCase, case_config, sweep_point
from ucpg_search.dynamics import PipelineBundle, run_pipeline, time_reversal_deviation
from ucpg_search.exceptions import CapacityException, QuantumWalkException
from ucpg_search.graph import (
    UcpgConfig,
    build_adjacency,
    build_collapsed_basis,
    make_config,
    uniform_superposition,
)
from ucpg_search.linalg import asymmetry
from ucpg_search.reduction import project_adjacency, reduce_krylov, self_loop_identity_holds
from ucpg_search.settings import (
    BETA_PRODUCT_TOL,
    CLOSURE_TOL,
    DEGENERACY_TOL,
    DYNAMICS_TOL,
    EIGENVALUE_TOL,
    EIGENVECTOR_RESIDUAL_TOL,
    INVARIANCE_TOL,
    NORM_TOL,
    OVERLAP_FORMULA_TOL,
    PROJECTOR_TOL,
    SYMMETRY_TOL,
    dense_guard,
)
from ucpg_search.special_cases import SpecialCase, verify_case
from ucpg_search.spectral import (
    analyze_spectrum,
    check_avoided_crossing,
    predicted_overlap,
    split_search_hamiltonian,
)

DEFAULT_GRID_MAX_N = 128
SPECIAL_CASE_MAX_N = 64
OVERLAP_SIZES = (100, 1000, 10000)
OVERLAP_SHARES = ((0.5, 1), (0.5, 2), (0.25, 3))
OVERLAP_MAX_SPREAD = 0.1
DETUNING_N = 1024
DETUNING_FACTOR = 3.0
DETUNING_MIN_DROP = 0.5
GAMMA_RATIO_TOL = 1e-10
# t_peak / T_run must stay within a factor of two
PEAK_TIME_RATIO_BOUNDS = (0.5, 2.0)


class Tolerances(BaseModel):
    """
    Represents the tolerances the verify suite judges with.
    """

    model_config = ConfigDict(frozen=True)

    closure: float = CLOSURE_TOL
    projector: float = PROJECTOR_TOL
    dynamics: float = DYNAMICS_TOL
    eigenvalue: float = EIGENVALUE_TOL
    degeneracy: float = DEGENERACY_TOL
    symmetry: float = SYMMETRY_TOL
    eigenvector_residual: float = EIGENVECTOR_RESIDUAL_TOL
    overlap_formula: float = OVERLAP_FORMULA_TOL
    beta_product: float = BETA_PRODUCT_TOL
    norm: float = NORM_TOL
    invariance: float = INVARIANCE_TOL

    @classmethod
    def uniform(cls, tol: Optional[float] = None) -> "Tolerances":
        if tol is None:
            return cls()
        return cls(**{name: tol for name in cls.model_fields})


class CheckResult(BaseModel):
    """
    Represents one verified property.

    Attributes:
        check_id (str): Property name, suffixed with the config label when per config.
        passed (bool): Verdict.
        value (Optional[float]): Measured quantity, if any.
        tolerance (Optional[float]): Bound the value was judged against, if any.
        detail (str): Free-text context.
    """

    model_config = ConfigDict(frozen=True)

    check_id: str
    passed: bool
    value: Optional[float] = None
    tolerance: Optional[float] = None
    detail: str = ""


class VerifyReport(BaseModel):
    """
    Represents the whole verify run.
    """

    model_config = ConfigDict(frozen=True)

    grid_max_n: int
    configs: int
    tolerances: Tolerances
    checks: List[CheckResult]
    failing: List[str]
    passed: bool


def grid_sizes(grid_max_n: int) -> List[int]:
    """
    Get the sizes of the verification grid: 2^k and 3 * 2^k from 4 up, plus 7 and 9.
    """
    sizes = {7, 9}
    power = 4
    while power <= grid_max_n:
        sizes.add(power)
        sizes.add(3 * power // 2)
        power *= 2
    return sorted(n for n in sizes if n <= grid_max_n)


def grid_configs(grid_max_n: int) -> List[UcpgConfig]:
    """
    Get the verification grid.

    For every grid size this takes P in {1, 2, 3, 4} with the smallest, the middle and the
    largest m1, plus the complete graph.

    Raises:
        CapacityException: If grid_max_n exceeds the dense guard.
    """
    if grid_max_n > dense_guard():
        raise CapacityException(
            f"--grid-max-n {grid_max_n} exceeds the dense guard of {dense_guard()}"
        )
    configs = {}
    for n_total in grid_sizes(grid_max_n):
        for p_parts in (1, 2, 3, 4):
            largest = (n_total - 1) // p_parts
            for m1 in sorted({1, max(1, largest // 2), largest}):
                m0 = n_total - p_parts * m1
                if m1 >= 1 and m0 >= 1:
                    config = make_config(n_total, p_parts, m0)
                    configs[config.label()] = config
        complete = make_config(n_total, n_total - 1, 1)
        configs[complete.label()] = complete
    return list(configs.values())


def _bounded(check_id: str, value: float, tolerance: float, detail: str = "") -> CheckResult:
    return CheckResult(
        check_id=check_id,
        passed=bool(value <= tolerance),
        value=float(value),
        tolerance=float(tolerance),
        detail=detail,
    )


def _flag(check_id: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(check_id=check_id, passed=bool(passed), detail=detail)


def _peak_time_check(label: str, ratio_time: float) -> CheckResult:
    low, high = PEAK_TIME_RATIO_BOUNDS
    return CheckResult(
        check_id=f"peak_time[{label}]",
        passed=bool(low <= ratio_time <= high),
        value=float(ratio_time),
        tolerance=high,
        detail=f"t_peak / T_run must lie in [{low}, {high}]",
    )


def config_checks(config: UcpgConfig, tolerances: Tolerances) -> List[CheckResult]:
    """
    Run the per-config invariants on one grid point.

    Returns:
        List[CheckResult]: One result per invariant, ids suffixed with the config label.
    """
    label = config.label()
    try:
        bundle: PipelineBundle = run_pipeline(config, include_full=True)
    except QuantumWalkException as e:
        logging.error("Pipeline failed for %s: %s", label, e)
        return [_flag(f"pipeline[{label}]", False, str(e))]

    results = []
    measurements = bundle.measurements
    spectral = bundle.spectral
    certificate = bundle.certificates[0]

    results.append(
        _bounded(f"closure[{label}]", measurements["closure_residual"], tolerances.closure)
    )
    results.append(
        _bounded(f"projector[{label}]", certificate.projector_distance, tolerances.projector)
    )
    results.append(
        _bounded(f"subspace_dynamics[{label}]", certificate.dynamics_distance, tolerances.dynamics)
    )
    results.append(
        _bounded(
            f"krylov_eigenvalues[{label}]", certificate.eigenvalue_distance, tolerances.eigenvalue
        )
    )

    adjacency = build_adjacency(config)
    basis = build_collapsed_basis(config, adjacency, allow_two_dimensional=True)
    projected = project_adjacency(adjacency, basis)
    projection_gap = float(np.max(np.abs(projected - bundle.reduced.matrix)))
    results.append(
        _bounded(f"projection_matches_closed_form[{label}]", projection_gap, tolerances.closure)
    )
    results.append(_flag(f"self_loop_identity[{label}]", self_loop_identity_holds(config)))

    uniform_krylov = reduce_krylov(adjacency, uniform_superposition(config), max_dim=3)
    outside = uniform_krylov.basis - basis.projector() @ uniform_krylov.basis
    results.append(
        _bounded(
            f"krylov_uniform_start[{label}]",
            float(np.linalg.norm(outside, ord="fro")),
            tolerances.projector,
            detail=f"dim {uniform_krylov.dim}",
        )
    )

    results.append(
        _bounded(
            f"full_reduced_equivalence[{label}]",
            measurements["full_reduced_deviation"],
            tolerances.dynamics,
        )
    )
    norm_drift = max(
        bundle.series_reduced.max_norm_deviation, bundle.series_full.max_norm_deviation
    )
    results.append(_bounded(f"unitarity[{label}]", norm_drift, tolerances.norm))
    reversal = time_reversal_deviation(
        bundle.search_hamiltonian, bundle.series_reduced.initial_state, bundle.series_reduced.times
    )
    results.append(_bounded(f"time_reversal[{label}]", reversal, tolerances.dynamics))
    results.append(
        _bounded(
            f"overlap_formula[{label}]",
            measurements["overlap_formula_deviation"],
            tolerances.overlap_formula,
        )
    )
    results.append(_peak_time_check(label, bundle.peak_report.ratio_time))

    kappa_ceiling = math.sqrt((1.0 - config.alpha) / config.alpha)
    kappa_ok = 0.0 <= spectral.kappa < kappa_ceiling and (
        (spectral.kappa == 0.0) == (config.p_parts == 1)
    )
    results.append(_flag(f"kappa_bounds[{label}]", kappa_ok, f"kappa={spectral.kappa}"))
    results.append(
        _bounded(
            f"beta_product[{label}]",
            abs(spectral.beta_plus * spectral.beta_minus + 1.0),
            tolerances.beta_product,
        )
    )

    if config.has_unmarked_rest:
        results.extend(_three_level_checks(config, bundle, tolerances))
    elif spectral.gamma_numeric is not None:
        ratio_gap = abs(
            spectral.gamma_numeric / spectral.gamma_formula - spectral.beta_plus / spectral.kappa
        )
        results.append(_bounded(f"gamma_cross_check[{label}]", ratio_gap, GAMMA_RATIO_TOL))
    return results


def _three_level_checks(
    config: UcpgConfig, bundle: PipelineBundle, tolerances: Tolerances
) -> List[CheckResult]:
    label = config.label()
    spectral = bundle.spectral
    results = [
        _bounded(
            f"eigenbasis_symmetry[{label}]",
            asymmetry(bundle.eigen_hamiltonian.matrix),
            tolerances.symmetry,
        ),
        _flag(
            f"sign_pattern[{label}]",
            spectral.beta_plus > 0 > spectral.beta_minus
            and spectral.lambda_plus < 0 < spectral.lambda_minus,
        ),
        _bounded(f"degeneracy[{label}]", bundle.measurements["degeneracy"], tolerances.degeneracy),
        _flag(
            f"escape_bound[{label}]",
            abs(spectral.delta2 / spectral.lambda_minus)
            < 1.0 / math.sqrt(config.alpha * config.n_total),
        ),
    ]

    split = split_search_hamiltonian(config, spectral.gamma)
    residual = 0.0
    pairs = (
        (spectral.e1_coeffs, spectral.lambda_plus),
        (spectral.e2_coeffs, spectral.lambda_minus),
    )
    for coeffs, energy in pairs:
        vector = np.array([0.0, *coeffs])
        residual = max(residual, float(np.linalg.norm(split.h0 @ vector - energy * vector)))
    scale = max(1.0, abs(spectral.lambda_minus), abs(spectral.v3))
    results.append(
        _bounded(
            f"eigenvector_residual[{label}]", residual / scale, tolerances.eigenvector_residual
        )
    )

    crossing = check_avoided_crossing(config, spectral)
    results.append(
        _flag(
            f"avoided_crossing[{label}]",
            crossing.passed,
            f"gap_at_opt={crossing.gap_at_opt} min_gap={crossing.min_gap} "
            f"argmin_gamma={crossing.argmin_gamma}",
        )
    )
    return results


def overlap_constancy_checks() -> List[CheckResult]:
    """
    Check that P_O stays constant and bounded away from zero at fixed (alpha, P).
    """
    results = []
    for share, p_parts in OVERLAP_SHARES:
        overlaps = []
        for n_total in OVERLAP_SIZES:
            config = case_config(SweepCase.CUSTOM, n_total, alpha=share, p_parts=p_parts)
            spectral = analyze_spectrum(config)
            overlaps.append(predicted_overlap(config, spectral))
        spread = (max(overlaps) - min(overlaps)) / max(overlaps)
        results.append(
            CheckResult(
                check_id=f"overlap_constancy[alpha={share},P={p_parts}]",
                passed=bool(spread < OVERLAP_MAX_SPREAD and min(overlaps) > 0.0),
                value=float(spread),
                tolerance=OVERLAP_MAX_SPREAD,
                detail=f"overlaps={overlaps}",
            )
        )
    return results


def detuning_check() -> CheckResult:
    """
    Check that tripling the coupling factor on the complete graph costs at least half of
    the peak success probability.
    """
    config = case_config(SweepCase.COMPLETE, DETUNING_N)
    tuned = sweep_point(config)
    detuned = sweep_point(config, gamma=DETUNING_FACTOR * tuned.gamma)
    drop = 1.0 - detuned.p_peak / tuned.p_peak
    return CheckResult(
        check_id=f"detuning[{config.label()}]",
        passed=bool(drop >= DETUNING_MIN_DROP),
        value=float(drop),
        tolerance=DETUNING_MIN_DROP,
        detail=f"p_peak {tuned.p_peak} -> {detuned.p_peak}",
    )


def special_case_checks(max_n: int, tol: float) -> List[CheckResult]:
    results = []
    upper = min(SPECIAL_CASE_MAX_N, max_n)
    for kind in SpecialCase:
        report = verify_case(kind, range(3, upper + 1), tol=tol)
        results.append(
            CheckResult(
                check_id=f"special_case[{kind.value}]",
                passed=report.passed,
                value=float(report.configs_checked),
                tolerance=tol,
                detail=(
                    f"failures={len(report.failures)} invariants={report.invariant_failures} "
                    f"hierarchy={report.hierarchy_failures} variants={report.variant_deviations}"
                ),
            )
        )
    return results


def run_verify(
    grid_max_n: int = DEFAULT_GRID_MAX_N, tol: Optional[float] = None, progress=None
) -> VerifyReport:
    """
    Run the full invariant suite.

    Args:
        grid_max_n (int): Largest N of the config grid.
        tol (Optional[float]): One tolerance overriding all of them.
        progress (Optional[Callable]): Wraps the grid iterable, e.g. with tqdm.

    Returns:
        VerifyReport: Every check and the ids of the failing ones.

    Raises:
        CapacityException: If grid_max_n exceeds the dense guard.
    """
    tolerances = Tolerances.uniform(tol)
    configs = grid_configs(grid_max_n)
    iterable = progress(configs) if progress is not None else configs

    checks: List[CheckResult] = []
    for config in iterable:
        checks.extend(config_checks(config, tolerances))
    checks.extend(overlap_constancy_checks())
    checks.append(detuning_check())
    checks.extend(special_case_checks(grid_max_n, tolerances.symmetry))

    failing = [check.check_id for check in checks if not check.passed]
    if failing:
        logging.warning("%s of %s checks failed", len(failing), len(checks))
    return VerifyReport(
        grid_max_n=grid_max_n,
        configs=len(configs),
        tolerances=tolerances,
        checks=checks,
        failing=failing,
        passed=not failing,
    )


def summarize(report: VerifyReport) -> Dict[str, int]:
    return {
        "checks": len(report.checks),
        "failing": len(report.failing),
        "configs": report.configs,
    }
