import math

import pytest
from numpy.testing import assert_allclose

from ucpg_search.exceptions import CapacityException, DomainException
from ucpg_search.reduction import reduce_closed_form
from ucpg_search.special_cases import (
    DEGREE_FORM,
    EXACT,
    LARGE_N,
    SpecialCase,
    expected_reduced,
    instantiate,
    verify_case,
)


def test_instantiate_families():
    complete = instantiate(SpecialCase.COMPLETE, 5)
    assert (complete.p_parts, complete.m0, complete.m1) == (4, 1, 1)

    star = instantiate("star", 5)
    assert (star.p_parts, star.m0, star.m1) == (1, 4, 1)

    bipartite = instantiate(SpecialCase.BIPARTITE, 10, m0=6)
    assert (bipartite.p_parts, bipartite.m0, bipartite.m1) == (1, 6, 4)


@pytest.mark.parametrize(
    "kind, n, m0",
    [("complete", 1, None), ("bipartite", 10, None), ("bipartite", 10, 10), ("star", 0, None)],
)
def test_instantiate_rejects_invalid_sizes(kind, n, m0):
    with pytest.raises(DomainException):
        instantiate(kind, n, m0)


def test_expected_bipartite_form():
    expected = expected_reduced(SpecialCase.BIPARTITE, 10, m0=6)[EXACT]
    assert expected[0, 2] == pytest.approx(2.0)
    assert expected[1, 2] == pytest.approx(math.sqrt(20))
    assert expected[2, 2] == 0.0
    assert_allclose(reduce_closed_form(instantiate("bipartite", 10, 6)).matrix, expected)


def test_expected_star_variants():
    variants = expected_reduced(SpecialCase.STAR, 10)
    assert set(variants) == {EXACT, DEGREE_FORM, LARGE_N}
    assert variants[EXACT][1, 2] == pytest.approx(math.sqrt(8))
    assert variants[DEGREE_FORM][1, 2] == pytest.approx(3.0)
    assert variants[LARGE_N][1, 2] == pytest.approx(math.sqrt(10))
    assert variants[EXACT][0, 2] == 1.0
    assert variants[EXACT][2, 2] == 0.0


def test_expected_complete_form():
    expected = expected_reduced(SpecialCase.COMPLETE, 8)[EXACT]
    assert_allclose(reduce_closed_form(instantiate("complete", 8)).matrix, expected, atol=1e-14)


def test_verify_complete_with_pipeline():
    report = verify_case(SpecialCase.COMPLETE, range(2, 13))
    assert report.passed
    assert report.configs_checked == 11
    assert report.hierarchy_failures == []


def test_verify_bipartite_runs_every_marked_size():
    report = verify_case(SpecialCase.BIPARTITE, [4, 6, 9], check_hierarchy=False)
    assert report.passed
    assert report.configs_checked == 3 + 5 + 8
    assert report.n_values == [4, 6, 9]


def test_verify_star_records_variant_deviations():
    report = verify_case(SpecialCase.STAR, range(3, 20), check_hierarchy=False)
    assert report.passed
    assert report.failures == []
    assert report.variant_deviations[DEGREE_FORM] > 0
    assert report.variant_deviations[LARGE_N] > report.variant_deviations[DEGREE_FORM]


def test_verify_respects_dense_guard(small_guard):
    with pytest.raises(CapacityException):
        verify_case(SpecialCase.COMPLETE, range(2, 12), check_hierarchy=False)
