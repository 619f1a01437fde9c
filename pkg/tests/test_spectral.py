import math

import numpy as np
import pytest
from hypothesis import given, settings
from numpy.testing import assert_allclose

from conftest import ucpg_configs
from ucpg_search.exceptions import (
    DegenerateBasisException,
    DomainException,
    IntegrityException,
)
from ucpg_search.graph import make_config
from ucpg_search.reduction import reduce_closed_form
from ucpg_search.spectral import (
    THREE_LEVEL,
    TWO_LEVEL,
    HamiltonianBasis,
    SearchHamiltonian,
    analyze_spectrum,
    build_model_hamiltonian,
    build_search_hamiltonian,
    check_avoided_crossing,
    classify_case,
    compute_betas,
    compute_gamma_opt,
    compute_kappa,
    direct_overlap,
    gamma_by_degeneracy,
    gamma_formula,
    predicted_overlap,
    predicted_runtime,
    rabi_time,
    split_search_hamiltonian,
    total_runtime,
    transform_to_eigenbasis,
    two_level_runtime,
)


def test_kappa_half_share_two_parts():
    assert compute_kappa(make_config(100, 2, 50)) == pytest.approx(0.5)


def test_kappa_vanishes_for_one_part():
    assert compute_kappa(make_config(100, 1, 50)) == 0.0


def test_betas():
    assert compute_betas(1.5) == pytest.approx((2.0, -0.5))
    assert compute_betas(0.0) == pytest.approx((1.0, -1.0))
    with pytest.raises(DomainException):
        compute_betas(-0.1)


@settings(max_examples=100, deadline=None)
@given(ucpg_configs(max_n=300))
def test_beta_product_is_minus_one(config):
    beta_plus, beta_minus = compute_betas(compute_kappa(config))
    assert beta_plus * beta_minus == pytest.approx(-1.0, abs=1e-14)
    assert beta_plus > 0 > beta_minus


def test_gamma_formula_for_one_part():
    assert gamma_formula(make_config(100, 1, 50)) == pytest.approx(0.02)


def test_predicted_runtime():
    config = make_config(200, 1, 100)
    spectral = analyze_spectrum(config)
    assert predicted_runtime(config, spectral) == pytest.approx(10 * math.pi)


@pytest.mark.parametrize("n_total", [5, 10, 64])
def test_complete_graph_coupling_factor(n_total):
    config = make_config(n_total, n_total - 1, 1)
    assert compute_gamma_opt(config) == pytest.approx(1.0 / (n_total - 2), rel=1e-12)
    spectral = analyze_spectrum(config)
    assert spectral.path == TWO_LEVEL
    assert spectral.gamma_numeric / spectral.gamma_formula == pytest.approx(
        spectral.beta_plus / spectral.kappa, rel=1e-10
    )


def test_single_edge_has_no_degeneracy():
    config = make_config(2, 1, 1)
    assert gamma_by_degeneracy(config) is None
    assert compute_gamma_opt(config) == pytest.approx(gamma_formula(config))


@settings(max_examples=60, deadline=None)
@given(ucpg_configs(max_n=500, min_m0=2))
def test_levels_degenerate_at_optimum(config):
    spectral = analyze_spectrum(config)
    assert spectral.path == THREE_LEVEL
    assert abs(spectral.lambda_plus + 1.0) <= 1e-12
    assert spectral.lambda_plus < 0 < spectral.lambda_minus


def test_explicit_gamma_is_kept(nine_config):
    spectral = analyze_spectrum(nine_config, gamma=0.3)
    assert spectral.gamma == 0.3
    assert spectral.gamma_opt == pytest.approx(gamma_formula(nine_config))
    with pytest.raises(DomainException):
        analyze_spectrum(nine_config, gamma=-1.0)


def test_search_hamiltonian_entries(nine_config):
    search_h = build_search_hamiltonian(reduce_closed_form(nine_config), 0.5)
    assert search_h.matrix[0, 0] == pytest.approx(-1.0)
    assert search_h.matrix[0, 2] == pytest.approx(-0.5 * math.sqrt(6))
    assert search_h.matrix[2, 2] == pytest.approx(-1.5)
    assert search_h.basis == HamiltonianBasis.COLLAPSED


def test_split_defect_and_m0_one(nine_config, k4_config):
    split = split_search_hamiltonian(nine_config, 1.0)
    assert_allclose(split.model_matrix, split.model_matrix.T)
    exact = -math.sqrt(12)
    assert split.model_defect == pytest.approx(abs(split.v1 - exact))
    with pytest.raises(DegenerateBasisException):
        split_search_hamiltonian(k4_config, 1.0)


@pytest.mark.parametrize("triple", [(100, 4, 20), (30, 4, 10), (1024, 2, 512)])
def test_eigenbasis_form(triple):
    config = make_config(*triple)
    spectral = analyze_spectrum(config)
    eigen = transform_to_eigenbasis(build_model_hamiltonian(config, spectral.gamma), spectral)
    assert eigen.basis == HamiltonianBasis.EIGEN
    assert abs(eigen.matrix[1, 2]) <= 1e-12 * max(1.0, np.max(np.abs(eigen.matrix)))
    assert_allclose(eigen.matrix, eigen.matrix.T, atol=1e-12)
    assert eigen.matrix[0, 1] == pytest.approx(spectral.delta1)


def test_eigenbasis_conjugates_the_given_matrix():
    config = make_config(30, 4, 10)
    spectral = analyze_spectrum(config)
    model = build_model_hamiltonian(config, spectral.gamma)
    perturbed_matrix = model.matrix.copy()
    perturbed_matrix[0, 2] += 1e-6
    perturbed_matrix[2, 0] += 1e-6
    perturbed = SearchHamiltonian(matrix=perturbed_matrix, gamma=model.gamma, config=config)
    with pytest.raises(IntegrityException, match="eigenbasis form"):
        transform_to_eigenbasis(perturbed, spectral)

    exact = build_search_hamiltonian(reduce_closed_form(config), spectral.gamma)
    with pytest.raises(IntegrityException):
        transform_to_eigenbasis(exact, spectral)


def test_one_part_couplings_are_opposite():
    spectral = analyze_spectrum(make_config(200, 1, 100))
    assert spectral.delta1 == pytest.approx(-spectral.delta2)


def test_eigenbasis_rejects_mismatched_spectral_data(nine_config, fig1_config):
    spectral = analyze_spectrum(fig1_config)
    search_h = build_search_hamiltonian(reduce_closed_form(nine_config), spectral.gamma)
    with pytest.raises(IntegrityException):
        transform_to_eigenbasis(search_h, spectral)


def test_escape_bound():
    config = make_config(100, 4, 20)
    spectral = analyze_spectrum(config)
    ratio = abs(spectral.delta2 / spectral.lambda_minus)
    assert ratio < 1.0 / math.sqrt(config.alpha * config.n_total)


@settings(max_examples=60, deadline=None)
@given(ucpg_configs(max_n=500, min_m0=2))
def test_overlap_formula_matches_inner_product(config):
    spectral = analyze_spectrum(config)
    assert abs(predicted_overlap(config, spectral) - direct_overlap(config, spectral)) <= 1e-10


def test_overlap_requires_matching_config(nine_config, fig1_config):
    with pytest.raises(IntegrityException):
        predicted_overlap(nine_config, analyze_spectrum(fig1_config))


@pytest.mark.parametrize(
    "triple, expected",
    [
        ((10, 9, 1), 4 * math.pi / 3),
        ((9, 2, 1), math.pi / math.sqrt(2)),
        ((4, 1, 1), math.pi / math.sqrt(5)),
        ((64, 1, 1), math.pi / math.sqrt(5)),
    ],
)
def test_single_marked_vertex_runtime_is_two_level_transfer_time(triple, expected):
    config = make_config(*triple)
    spectral = analyze_spectrum(config)
    assert spectral.path == TWO_LEVEL
    assert predicted_runtime(config, spectral) == pytest.approx(expected)
    assert predicted_runtime(config, spectral) == pytest.approx(two_level_runtime(spectral))


def test_total_runtime_and_rabi_time():
    config = make_config(400, 1, 200)
    spectral = analyze_spectrum(config)
    assert total_runtime(config, spectral) == pytest.approx(
        predicted_runtime(config, spectral) / predicted_overlap(config, spectral)
    )
    assert rabi_time(spectral) == pytest.approx(math.pi / (2 * abs(spectral.delta1)))
    assert rabi_time(spectral) < predicted_runtime(config, spectral)


@pytest.mark.parametrize("triple", [(100, 4, 20), (200, 1, 100), (128, 2, 64)])
def test_avoided_crossing(triple):
    config = make_config(*triple)
    crossing = check_avoided_crossing(config, analyze_spectrum(config))
    assert crossing.passed
    assert crossing.min_gap <= crossing.gap_at_opt
    assert crossing.expected_ratio >= 1.0


@pytest.mark.parametrize(
    "triple, expected",
    [((9, 1, 3), 1), ((10, 3, 1), 2), ((9, 2, 5), 3), ((30, 4, 10), 4)],
)
def test_classify_case(triple, expected):
    assert classify_case(make_config(*triple)) == expected
