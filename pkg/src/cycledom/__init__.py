"""Domination numbers of Cartesian products of two directed cycles."""

from .bounds import GammaResult, Method, classify, gamma, known_gamma, lower_bound
from .core import CandidateSet, ColumnMask, CycleProduct, is_dominating, read_set, write_set

__all__ = [
    "CandidateSet",
    "ColumnMask",
    "CycleProduct",
    "GammaResult",
    "Method",
    "classify",
    "gamma",
    "is_dominating",
    "known_gamma",
    "lower_bound",
    "read_set",
    "write_set",
]
