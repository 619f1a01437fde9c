"""
This package maps the complete, complete bipartite and star graphs onto UCPG parameters.
"""
from .cases import (
    DEGREE_FORM,
    EXACT,
    LARGE_N,
    CaseFailure,
    CaseReport,
    SpecialCase,
    expected_reduced,
    instantiate,
    verify_case,
)

__all__ = [
    "DEGREE_FORM",
    "EXACT",
    "LARGE_N",
    "CaseFailure",
    "CaseReport",
    "SpecialCase",
    "expected_reduced",
    "instantiate",
    "verify_case",
]
