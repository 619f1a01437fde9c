import numpy as np
import pytest
from hypothesis import given, settings
from numpy.testing import assert_allclose

from conftest import ucpg_configs
from ucpg_search.exceptions import CertificationException, DomainException
from ucpg_search.graph import (
    build_adjacency,
    build_collapsed_basis,
    make_config,
    uniform_superposition,
)
from ucpg_search.reduction import (
    BASIS_LABELS,
    certify_same_subspace,
    eigenvalue_agreement,
    project_adjacency,
    reduce_closed_form,
    reduce_krylov,
    self_loop_identity_holds,
)


def test_closed_form_nine_vertices(nine_config):
    reduced = reduce_closed_form(nine_config)
    expected = np.array(
        [
            [0.0, 0.0, np.sqrt(6)],
            [0.0, 0.0, np.sqrt(12)],
            [np.sqrt(6), np.sqrt(12), 3.0],
        ]
    )
    assert_allclose(reduced.matrix, expected, atol=1e-14)
    assert reduced.basis_labels == BASIS_LABELS


def test_closed_form_k4_has_null_middle_row(k4_config):
    reduced = reduce_closed_form(k4_config)
    assert_allclose(
        reduced.matrix,
        [[0.0, 0.0, np.sqrt(3)], [0.0, 0.0, 0.0], [np.sqrt(3), 0.0, 2.0]],
        atol=1e-14,
    )
    assert reduced.active_indices == (0, 2)
    assert reduced.to_dict()["null_middle_row"] is True


def test_uniform_state_is_normalized(fig1_config):
    state = reduce_closed_form(fig1_config).uniform_state()
    assert np.linalg.norm(state) == pytest.approx(1.0)
    assert state[0] == pytest.approx(1 / np.sqrt(7))


@settings(max_examples=40, deadline=None)
@given(ucpg_configs())
def test_projection_matches_closed_form(config):
    adjacency = build_adjacency(config)
    basis = build_collapsed_basis(config, adjacency, allow_two_dimensional=True)
    assert_allclose(
        project_adjacency(adjacency, basis), reduce_closed_form(config).matrix, atol=1e-10
    )


@settings(max_examples=100, deadline=None)
@given(ucpg_configs(max_n=400))
def test_self_loop_identity(config):
    assert self_loop_identity_holds(config)


def test_krylov_k4_from_marked_vertex(k4_config):
    adjacency = build_adjacency(k4_config)
    omega = np.eye(4)[0]
    krylov = reduce_krylov(adjacency, omega)
    assert krylov.dim == 2
    assert krylov.is_invariant
    assert_allclose(krylov.tridiagonal, [[0.0, np.sqrt(3)], [np.sqrt(3), 2.0]], atol=1e-12)


def test_krylov_nine_vertices_is_three_dimensional(nine_config, nine_adjacency):
    krylov = reduce_krylov(nine_adjacency, np.eye(9)[0])
    assert krylov.dim == 3
    assert krylov.is_invariant
    assert_allclose(krylov.basis.T @ krylov.basis, np.eye(3), atol=1e-12)


def test_krylov_from_uniform_state_on_complete_graph():
    config = make_config(6, 5, 1)
    krylov = reduce_krylov(build_adjacency(config), uniform_superposition(config))
    assert krylov.dim == 1
    assert krylov.tridiagonal[0, 0] == pytest.approx(5.0)


def test_krylov_from_uniform_state_stays_in_collapsed_span(nine_config, nine_adjacency):
    krylov = reduce_krylov(nine_adjacency, uniform_superposition(nine_config))
    projector = build_collapsed_basis(nine_config, nine_adjacency).projector()
    assert_allclose(projector @ krylov.basis, krylov.basis, atol=1e-10)


def test_krylov_rejects_unnormalized_start(nine_adjacency):
    with pytest.raises(DomainException, match="normalized"):
        reduce_krylov(nine_adjacency, np.ones(9))


def test_krylov_rejects_non_symmetric_matrix():
    matrix = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(DomainException, match="Hermitian"):
        reduce_krylov(matrix, np.array([1.0, 0.0]))


def test_krylov_rejects_wrong_start_length(nine_adjacency):
    with pytest.raises(DomainException):
        reduce_krylov(nine_adjacency, np.array([1.0, 0.0]))


@pytest.mark.parametrize("triple", [(9, 2, 3), (30, 4, 10), (4, 3, 1)])
def test_certify_same_subspace(triple):
    config = make_config(*triple)
    adjacency = build_adjacency(config)
    basis = build_collapsed_basis(config, adjacency, allow_two_dimensional=True)
    krylov = reduce_krylov(adjacency, basis.omega)
    certificate = certify_same_subspace(reduce_closed_form(config), basis, krylov, adjacency)
    assert certificate.passed
    assert certificate.closed_dim == certificate.krylov_dim == basis.dim
    assert certificate.projector_norm == "frobenius"


def test_certify_rejects_dimension_mismatch(nine_config, nine_adjacency):
    basis = build_collapsed_basis(nine_config, nine_adjacency)
    krylov = reduce_krylov(nine_adjacency, basis.omega, max_dim=2)
    closed = reduce_closed_form(nine_config)
    with pytest.raises(CertificationException):
        certify_same_subspace(closed, basis, krylov, nine_adjacency)
    with pytest.raises(CertificationException):
        eigenvalue_agreement(closed, krylov)
