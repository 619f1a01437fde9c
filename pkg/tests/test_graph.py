import numpy as np
import pytest
from hypothesis import given, settings
from numpy.testing import assert_allclose
from pydantic import ValidationError

from conftest import ucpg_configs
from ucpg_search.exceptions import (
    CapacityException,
    ConfigurationException,
    DegenerateBasisException,
    DomainException,
)
from ucpg_search.graph import (
    UcpgConfig,
    build_adjacency,
    build_collapsed_basis,
    closure_residuals,
    gram_matrix,
    make_config,
    uniform_superposition,
)


def test_make_config_derives_m1():
    config = make_config(9, 2, 3)
    assert config.m1 == 3
    assert config.alpha == pytest.approx(1 / 3)
    assert config.alpha1 == pytest.approx((1 - config.alpha) / config.p_parts)


def test_make_config_fig1_graph(fig1_config):
    assert fig1_config.m1 == 2
    assert fig1_config.alpha == pytest.approx(3 / 7)


def test_make_config_rejects_non_divisible_rest():
    with pytest.raises(ConfigurationException, match="divisible") as error:
        make_config(8, 3, 3)
    assert "N=8, P=3, m0=3" in str(error.value)


@pytest.mark.parametrize("triple", [(0, 1, 1), (5, 0, 1), (5, 1, 0), (5, -2, 1)])
def test_make_config_rejects_non_positive(triple):
    with pytest.raises(ConfigurationException):
        make_config(*triple)


def test_make_config_rejects_marked_partition_covering_graph():
    with pytest.raises(DomainException):
        make_config(5, 1, 5)


def test_config_model_checks_partition_sum():
    with pytest.raises(ValidationError):
        UcpgConfig(n_total=10, p_parts=2, m0=3, m1=4)


def test_config_is_frozen(nine_config):
    with pytest.raises(ValidationError):
        nine_config.m0 = 4


def test_small_m0_flag():
    assert make_config(9, 2, 3).small_m0
    assert not make_config(30, 4, 10).small_m0


def test_partition_labels(fig1_config):
    assert fig1_config.partition_labels().tolist() == [0, 0, 0, 1, 1, 2, 2]


def test_adjacency_single_edge():
    adjacency = build_adjacency(make_config(2, 1, 1))
    assert_allclose(adjacency.matrix, [[0.0, 1.0], [1.0, 0.0]])


def test_adjacency_k4_is_complete(k4_config):
    adjacency = build_adjacency(k4_config)
    assert_allclose(adjacency.matrix, np.ones((4, 4)) - np.eye(4))


def test_adjacency_degrees(fig1_config):
    degrees = build_adjacency(fig1_config).degrees()
    assert degrees[0] == 4
    assert degrees[3] == 5


@settings(max_examples=40, deadline=None)
@given(ucpg_configs())
def test_adjacency_structure(config):
    adjacency = build_adjacency(config)
    matrix = adjacency.matrix
    assert_allclose(matrix, matrix.T)
    assert np.all(np.diag(matrix) == 0)
    labels = config.partition_labels()
    sizes = np.where(labels == 0, config.m0, config.m1)
    assert_allclose(adjacency.degrees(), config.n_total - sizes)


def test_collapsed_basis_amplitudes(fig1_config, nine_adjacency, nine_config):
    basis = build_collapsed_basis(fig1_config, build_adjacency(fig1_config))
    assert_allclose(basis.s_v0_minus_omega[1:3], 1 / np.sqrt(2))
    assert basis.s_v0_minus_omega[0] == 0.0

    nine_basis = build_collapsed_basis(nine_config, nine_adjacency)
    assert_allclose(nine_basis.s_vbar0[3:], 1 / np.sqrt(6))
    assert np.all(nine_basis.s_vbar0[:3] == 0.0)


def test_collapsed_basis_orthonormal():
    config = make_config(30, 4, 10)
    basis = build_collapsed_basis(config, build_adjacency(config))
    assert_allclose(gram_matrix(basis), np.eye(3), atol=1e-12)


def test_collapsed_basis_rejects_single_marked_vertex(k4_config):
    adjacency = build_adjacency(k4_config)
    with pytest.raises(DegenerateBasisException):
        build_collapsed_basis(k4_config, adjacency)
    basis = build_collapsed_basis(k4_config, adjacency, allow_two_dimensional=True)
    assert basis.dim == 2
    assert basis.reduced_indices == (0, 2)


def test_collapsed_basis_rejects_foreign_adjacency(nine_config, fig1_config):
    with pytest.raises(DomainException):
        build_collapsed_basis(nine_config, build_adjacency(fig1_config))


@settings(max_examples=40, deadline=None)
@given(ucpg_configs())
def test_collapsed_span_is_closed_and_holds_uniform_state(config):
    adjacency = build_adjacency(config)
    basis = build_collapsed_basis(config, adjacency, allow_two_dimensional=True)
    assert max(closure_residuals(adjacency, basis)) <= 1e-10

    uniform = uniform_superposition(config)
    leftover = uniform - basis.projector() @ uniform
    assert np.linalg.norm(leftover) <= 1e-12

    n_total, m0 = config.n_total, config.m0
    reduced = np.array([1.0, np.sqrt(m0 - 1), np.sqrt(n_total - m0)]) / np.sqrt(n_total)
    assert_allclose(basis.embed(reduced), uniform, atol=1e-12)


def test_dense_guard(small_guard):
    with pytest.raises(CapacityException, match="QWALK_DENSE_GUARD"):
        build_adjacency(make_config(12, 2, 6))
    assert build_adjacency(make_config(10, 1, 5)).size == 10
