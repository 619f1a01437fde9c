import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ucpg_search.controllers import SweepCase, case_config, fit_scaling, sweep_point
from ucpg_search.dynamics import (
    STAGES,
    InitialState,
    Space,
    build_full_search_hamiltonian,
    evolve,
    first_peak_index,
    max_deviation,
    measure_peak,
    pipeline_stage,
    probability_function,
    run_pipeline,
    sample_times,
    success_probability,
    time_reversal_deviation,
    uniform_initial_state,
)
from ucpg_search.exceptions import (
    DomainException,
    IntegrityException,
    PipelineException,
    SearchWindowException,
)
from ucpg_search.graph import build_adjacency, make_config
from ucpg_search.reduction import reduce_closed_form
from ucpg_search.spectral import (
    HamiltonianBasis,
    SearchHamiltonian,
    analyze_spectrum,
    build_search_hamiltonian,
    predicted_runtime,
)


def _optimal_hamiltonian(config):
    spectral = analyze_spectrum(config)
    return spectral, build_search_hamiltonian(reduce_closed_form(config), spectral.gamma_opt)


def test_zero_hamiltonian_keeps_probability(nine_config):
    h = SearchHamiltonian(matrix=np.zeros((3, 3)), gamma=0.0, config=nine_config)
    series = evolve(h, uniform_initial_state(nine_config), np.linspace(0.0, 10.0, 25))
    assert_allclose(series.p_success, 1.0 / 9, atol=1e-14)
    assert series.space == Space.REDUCED


def test_two_level_rabi_oscillation(nine_config):
    coupling = 0.3
    matrix = np.array([[0.0, coupling, 0.0], [coupling, 0.0, 0.0], [0.0, 0.0, 0.0]])
    h = SearchHamiltonian(matrix=matrix, gamma=1.0, config=nine_config)
    psi0 = InitialState(reduced_coeffs=np.array([0.0, 1.0, 0.0], dtype=complex))
    times = np.linspace(0.0, 20.0, 101)
    series = evolve(h, psi0, times)
    assert_allclose(series.p_success, np.sin(coupling * times) ** 2, atol=1e-12)


def test_initial_state_must_be_normalized():
    with pytest.raises(DomainException):
        InitialState(reduced_coeffs=np.array([1.0, 1.0, 0.0]))


def test_uniform_initial_state(fig1_config):
    state = uniform_initial_state(fig1_config, with_full=True)
    assert_allclose(state.full_vector, 1 / math.sqrt(7))
    assert_allclose(abs(state.reduced_coeffs[1]) ** 2, 2 / 7)


def test_sample_times():
    assert_allclose(sample_times(2.0, 5, 3.0), [0.0, 1.5, 3.0, 4.5, 6.0])
    assert_allclose(sample_times(2.0, 1), [0.0])
    with pytest.raises(DomainException):
        sample_times(2.0, 0)


def test_full_search_hamiltonian_entries():
    adjacency = build_adjacency(make_config(2, 1, 1))
    matrix = build_full_search_hamiltonian(adjacency, 1.0).matrix
    assert_allclose(matrix, [[-1.0, -1.0], [-1.0, 0.0]])

    free = build_full_search_hamiltonian(build_adjacency(make_config(9, 2, 3)), 0.0)
    eigenvalues = np.linalg.eigvalsh(free.matrix)
    assert eigenvalues[0] == pytest.approx(-1.0)
    assert_allclose(eigenvalues[1:], 0.0, atol=1e-14)


@pytest.mark.parametrize("triple", [(9, 2, 3), (7, 2, 3), (4, 3, 1), (30, 4, 10)])
def test_full_and_reduced_evolution_agree(triple):
    config = make_config(*triple)
    spectral, reduced_h = _optimal_hamiltonian(config)
    full_h = build_full_search_hamiltonian(build_adjacency(config), spectral.gamma_opt)
    psi0 = uniform_initial_state(config, with_full=True)
    times = sample_times(predicted_runtime(config, spectral), 200)
    full = evolve(full_h, psi0, times)
    reduced = evolve(reduced_h, psi0, times)
    assert full.space == Space.FULL
    assert max_deviation(full, reduced) <= 1e-9
    assert full.max_norm_deviation <= 1e-10


def test_max_deviation_needs_same_grid(nine_config):
    _, h = _optimal_hamiltonian(nine_config)
    psi0 = uniform_initial_state(nine_config)
    first = evolve(h, psi0, np.linspace(0.0, 1.0, 5))
    second = evolve(h, psi0, np.linspace(0.0, 2.0, 5))
    with pytest.raises(IntegrityException):
        max_deviation(first, second)


def test_evolution_input_checks(nine_config):
    spectral, h = _optimal_hamiltonian(nine_config)
    full_h = build_full_search_hamiltonian(build_adjacency(nine_config), spectral.gamma_opt)
    with pytest.raises(IntegrityException):
        evolve(full_h, uniform_initial_state(nine_config), np.array([0.0, 1.0]))

    eigen_h = SearchHamiltonian(
        matrix=h.matrix, gamma=h.gamma, config=nine_config, basis=HamiltonianBasis.EIGEN
    )
    with pytest.raises(IntegrityException):
        evolve(eigen_h, uniform_initial_state(nine_config), np.array([0.0, 1.0]))


def test_time_reversal(nine_config):
    _, h = _optimal_hamiltonian(nine_config)
    times = np.linspace(0.0, 30.0, 120)
    assert time_reversal_deviation(h, uniform_initial_state(nine_config), times) <= 1e-12


def test_probability_function_matches_series(fig1_config):
    _, h = _optimal_hamiltonian(fig1_config)
    psi0 = uniform_initial_state(fig1_config)
    times = np.linspace(0.0, 12.0, 7)
    series = evolve(h, psi0, times)
    probability = probability_function(h, psi0)
    assert_allclose([probability(t) for t in times], series.p_success, atol=1e-12)
    assert success_probability(h, psi0, times[3]) == pytest.approx(series.p_success[3])


def test_first_peak_index():
    assert first_peak_index(np.array([0.1, 0.5, 0.2, 0.9, 0.1])) == 1
    with pytest.raises(SearchWindowException):
        first_peak_index(np.full(10, 0.25))
    with pytest.raises(SearchWindowException):
        first_peak_index(np.linspace(0.0, 1.0, 10))


def test_peak_needs_two_runtimes():
    config = make_config(400, 1, 200)
    spectral, h = _optimal_hamiltonian(config)
    times = sample_times(predicted_runtime(config, spectral), 100, window_factor=1.0)
    series = evolve(h, uniform_initial_state(config), times)
    with pytest.raises(SearchWindowException):
        measure_peak(series, spectral)


def test_peak_matches_overlap_and_rabi_time():
    bundle = run_pipeline((400, 1, 200), include_full=False)
    report = bundle.peak_report
    assert report.ratio_prob == pytest.approx(1.0, abs=0.1)
    assert report.ratio_rabi == pytest.approx(1.0, abs=0.1)
    assert report.ratio_time == pytest.approx(1 / math.sqrt(2), abs=0.1)
    assert report.space == Space.REDUCED.value


@pytest.mark.parametrize(
    "case", [SweepCase.CASE1, SweepCase.CASE2, SweepCase.CASE3, SweepCase.CASE4]
)
def test_peak_time_within_factor_two_of_runtime(case):
    row = sweep_point(case_config(case, 1024))
    assert 0.5 <= row.ratio_time <= 2.0


@pytest.mark.parametrize("triple", [(4, 3, 1), (7, 2, 1), (9, 2, 1), (4, 1, 1), (64, 1, 1)])
def test_single_marked_vertex_peak_time(triple):
    report = run_pipeline(triple).peak_report
    assert 0.5 <= report.ratio_time <= 2.0
    assert report.ratio_time == pytest.approx(1.0, abs=0.1)


def test_detuned_coupling_lowers_peak():
    config = case_config(SweepCase.COMPLETE, 1024)
    optimal = sweep_point(config)
    detuned = sweep_point(config, gamma=3 * optimal.gamma)
    assert optimal.p_peak > 0.9
    assert detuned.p_peak <= 0.5 * optimal.p_peak


def test_complete_graph_peak_time_scales_with_square_root():
    rows = [sweep_point(case_config(SweepCase.COMPLETE, n)) for n in (64, 128, 256, 512, 1024)]
    fit = fit_scaling(rows, SweepCase.COMPLETE.value)
    assert fit.slope == pytest.approx(0.5, abs=0.05)
    assert fit.points == 5


def test_pipeline_seven_vertices(fig1_config):
    bundle = run_pipeline(fig1_config)
    assert bundle.all_passed
    assert bundle.series_full is not None
    assert bundle.eigen_hamiltonian.basis == HamiltonianBasis.EIGEN
    assert bundle.certificates[0].passed
    assert {"closure", "degeneracy", "full_reduced_equivalence"} <= set(bundle.checks)
    payload = bundle.to_dict()
    assert payload["all_passed"] is True
    assert payload["h_ra"]["null_middle_row"] is False


def test_pipeline_single_edge():
    bundle = run_pipeline((2, 1, 1))
    assert bundle.eigen_hamiltonian is None
    assert "degeneracy" not in bundle.checks
    assert bundle.checks["overlap_formula"]
    assert bundle.checks["full_reduced_equivalence"]


def test_pipeline_reduced_only(nine_config):
    bundle = run_pipeline(nine_config, include_full=False)
    assert bundle.series_full is None
    assert bundle.certificates == []
    assert "closure" not in bundle.checks


def test_pipeline_reports_failing_stage():
    with pytest.raises(PipelineException) as error:
        run_pipeline((8, 3, 3))
    assert error.value.stage == STAGES[0]


def test_pipeline_stage_wraps_toolkit_errors():
    with pytest.raises(PipelineException) as error:
        with pipeline_stage("basis_change"):
            raise DomainException("broken")
    assert error.value.stage == "basis_change"
    assert isinstance(error.value.__cause__, DomainException)
    assert "[basis_change] broken" in str(error.value)


@pytest.mark.slow
@pytest.mark.parametrize(
    "case", [SweepCase.CASE1, SweepCase.CASE2, SweepCase.CASE3, SweepCase.CASE4]
)
def test_optimality_cases_scale_with_square_root(case):
    rows = [sweep_point(case_config(case, n)) for n in (2**8, 2**10, 2**12, 2**14)]
    fit = fit_scaling(rows, case.value)
    assert 0.45 <= fit.slope <= 0.55
    assert all(row.p_peak >= 0.1 for row in rows)
    assert all(abs(row.ratio_prob - 1.0) <= 0.15 for row in rows)
    assert all(0.5 <= row.ratio_time <= 2.0 for row in rows)
