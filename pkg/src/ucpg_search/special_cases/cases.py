"""
This module translates the complete graph, the complete bipartite graph and the star graph
into UCPG parameters and checks their reduced Hamiltonians against the displayed forms.
"""
import logging
import math
from enum import Enum
from typing import Dict, Iterable, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from ucpg_search.dynamics import run_pipeline
from ucpg_search.exceptions import CapacityException, DomainException, QuantumWalkException
from ucpg_search.graph import UcpgConfig, make_config
from ucpg_search.reduction import reduce_closed_form
from ucpg_search.settings import SYMMETRY_TOL, dense_guard
from ucpg_search.spectral import compute_betas, compute_kappa

EXACT = "exact"
DEGREE_FORM = "degree"
LARGE_N = "large_n"


class SpecialCase(str, Enum):
    """
    Named graph families inside the UCPG class.
    """

    COMPLETE = "complete"
    BIPARTITE = "bipartite"
    STAR = "star"


class CaseFailure(BaseModel):
    """
    Represents one entry where the reduced Hamiltonian departs from the expected form.
    """

    model_config = ConfigDict(frozen=True)

    config: UcpgConfig
    entry: List[int]
    expected: float
    actual: float
    deviation: float


class CaseReport(BaseModel):
    """
    Represents the verification of one special case over a range of sizes.

    Attributes:
        kind (SpecialCase): The graph family.
        n_values (List[int]): Sizes that were checked.
        configs_checked (int): Number of configs, more than n_values for the bipartite case.
        tolerance (float): Entrywise tolerance.
        failures (List[CaseFailure]): Entries that missed the exact form.
        invariant_failures (List[str]): Configs that broke a family invariant.
        hierarchy_failures (List[str]): Configs the pipeline rejected.
        variant_deviations (Dict[str, float]): Largest deviation of each approximate
            variant from the exact form; recorded, never failed.
        passed (bool): True when all three failure lists are empty.
    """

    model_config = ConfigDict(frozen=True)

    kind: SpecialCase
    n_values: List[int]
    configs_checked: int
    tolerance: float
    failures: List[CaseFailure]
    invariant_failures: List[str]
    hierarchy_failures: List[str]
    variant_deviations: Dict[str, float]
    passed: bool


def instantiate(kind: SpecialCase, n: int, m0: Optional[int] = None) -> UcpgConfig:
    """
    Get the UCPG parameters of a special case.

    Args:
        kind (SpecialCase): The graph family.
        n (int): Number of vertices, at least 2.
        m0 (Optional[int]): Size of the marked side, required for the bipartite case.

    Returns:
        UcpgConfig: complete (P = N - 1, m0 = m1 = 1), bipartite (P = 1, m1 = N - m0) or
        star with a marked leaf (P = 1, m0 = N - 1, m1 = 1).

    Raises:
        DomainException: If n or m0 is invalid for the family.
    """
    kind = SpecialCase(kind)
    if n < 2:
        raise DomainException(f"A {kind.value} graph needs at least 2 vertices, got {n}")
    if kind == SpecialCase.COMPLETE:
        return make_config(n, n - 1, 1)
    if kind == SpecialCase.STAR:
        return make_config(n, 1, n - 1)
    if m0 is None or not 1 <= m0 < n:
        raise DomainException(f"A bipartite graph on {n} vertices needs 1 <= m0 < {n}, got {m0}")
    return make_config(n, 1, m0)


def _symmetric(a13: float, a23: float, a33: float) -> np.ndarray:
    return np.array([[0.0, 0.0, a13], [0.0, 0.0, a23], [a13, a23, a33]])


def expected_reduced(
    kind: SpecialCase, n: int, m0: Optional[int] = None
) -> Dict[str, np.ndarray]:
    """
    Get the displayed reduced Hamiltonian of a special case with N substituted.

    The star graph comes in three variants: the direct substitution (exact), the displayed
    form with the centre degree sqrt(N - 1) (degree) and the large-N form with sqrt(N) (large_n).

    Args:
        kind (SpecialCase): The graph family.
        n (int): Number of vertices.
        m0 (Optional[int]): Size of the marked side, required for the bipartite case.

    Returns:
        Dict[str, np.ndarray]: Variant label to 3 x 3 matrix, always holding "exact".
    """
    kind = SpecialCase(kind)
    if kind == SpecialCase.COMPLETE:
        return {EXACT: _symmetric(math.sqrt(n - 1), 0.0, n - 2)}
    if kind == SpecialCase.BIPARTITE:
        if m0 is None:
            raise DomainException("The bipartite form needs m0")
        m1 = n - m0
        return {EXACT: _symmetric(math.sqrt(m1), math.sqrt(m1 * (m0 - 1)), 0.0)}
    return {
        EXACT: _symmetric(1.0, math.sqrt(n - 2), 0.0),
        DEGREE_FORM: _symmetric(1.0, math.sqrt(n - 1), 0.0),
        LARGE_N: _symmetric(1.0, math.sqrt(n), 0.0),
    }


def _compare(config: UcpgConfig, actual: np.ndarray, expected: np.ndarray, tol: float):
    failures = []
    for i, j in zip(*np.nonzero(np.abs(actual - expected) > tol)):
        failures.append(
            CaseFailure(
                config=config,
                entry=[int(i), int(j)],
                expected=float(expected[i, j]),
                actual=float(actual[i, j]),
                deviation=float(abs(actual[i, j] - expected[i, j])),
            )
        )
    return failures


def _family_invariant_holds(kind: SpecialCase, config: UcpgConfig) -> bool:
    if kind == SpecialCase.BIPARTITE:
        beta_plus, _ = compute_betas(compute_kappa(config))
        return compute_kappa(config) == 0.0 and beta_plus == 1.0
    if kind == SpecialCase.COMPLETE:
        return config.m0 == 1 and config.m1 == 1 and config.p_parts == config.n_total - 1
    return config.m0 == config.n_total - 1 and config.m1 == 1 and config.p_parts == 1


def verify_case(
    kind: SpecialCase,
    n_range: Iterable[int],
    tol: float = SYMMETRY_TOL,
    check_hierarchy: bool = True,
) -> CaseReport:
    """
    Check the closed-form reduction of a special case against its displayed form.

    Args:
        kind (SpecialCase): The graph family.
        n_range (Iterable[int]): Sizes to check; the bipartite case runs every valid m0.
        tol (float): Entrywise tolerance.
        check_hierarchy (bool): Also run each config through the reduced-space pipeline.

    Returns:
        CaseReport: Failures per entry, per invariant and per pipeline run.

    Raises:
        CapacityException: If a size exceeds the dense guard.
    """
    kind = SpecialCase(kind)
    n_values = sorted(set(int(n) for n in n_range))
    if n_values and n_values[-1] > dense_guard():
        raise CapacityException(
            f"Special-case range reaches N={n_values[-1]}, above the dense guard {dense_guard()}"
        )

    failures: List[CaseFailure] = []
    invariant_failures: List[str] = []
    hierarchy_failures: List[str] = []
    variant_deviations: Dict[str, float] = {}
    configs_checked = 0

    for n in n_values:
        m0_values = range(1, n) if kind == SpecialCase.BIPARTITE else [None]
        for m0 in m0_values:
            config = instantiate(kind, n, m0)
            configs_checked += 1
            actual = reduce_closed_form(config).matrix
            variants = expected_reduced(kind, n, m0)
            failures.extend(_compare(config, actual, variants[EXACT], tol))
            for label, matrix in variants.items():
                if label == EXACT:
                    continue
                deviation = float(np.max(np.abs(actual - matrix)))
                variant_deviations[label] = max(variant_deviations.get(label, 0.0), deviation)
            if not _family_invariant_holds(kind, config):
                invariant_failures.append(config.label())
            if check_hierarchy:
                try:
                    run_pipeline(config, include_full=False)
                except QuantumWalkException as e:
                    logging.warning("Pipeline rejected %s: %s", config.label(), e)
                    hierarchy_failures.append(config.label())

    passed = not failures and not invariant_failures and not hierarchy_failures
    logging.info(
        "Special case %s over %s configs: passed=%s", kind.value, configs_checked, passed
    )
    return CaseReport(
        kind=kind,
        n_values=n_values,
        configs_checked=configs_checked,
        tolerance=tol,
        failures=failures,
        invariant_failures=invariant_failures,
        hierarchy_failures=hierarchy_failures,
        variant_deviations=variant_deviations,
        passed=passed,
    )
