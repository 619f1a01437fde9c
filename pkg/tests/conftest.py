"""
Shared fixtures and hypothesis strategies for the test suite.
"""
import hypothesis.strategies as st
import pytest

from ucpg_search.graph import build_adjacency, make_config


@st.composite
def ucpg_configs(draw, max_n=48, min_m0=1):
    """
    Draw a valid UCPG with at most max_n vertices.
    """
    p_parts = draw(st.integers(min_value=1, max_value=6))
    m1 = draw(st.integers(min_value=1, max_value=max(1, (max_n - min_m0) // p_parts)))
    m0 = draw(st.integers(min_value=min_m0, max_value=max_n - p_parts * m1))
    return make_config(p_parts * m1 + m0, p_parts, m0)


@pytest.fixture
def fig1_config():
    """The 7-vertex graph with m0 = 3 and two partitions of size 2."""
    return make_config(7, 2, 3)


@pytest.fixture
def nine_config():
    return make_config(9, 2, 3)


@pytest.fixture
def k4_config():
    return make_config(4, 3, 1)


@pytest.fixture
def nine_adjacency(nine_config):
    return build_adjacency(nine_config)


@pytest.fixture
def small_guard(monkeypatch):
    monkeypatch.setenv("QWALK_DENSE_GUARD", "10")
    return 10
