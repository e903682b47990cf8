"""Exact invariants of integer matrices: Smith form, p-local divisors, determinants, ranks."""

from .filtration import filtration_bases, filtration_dims
from .fraction_free import determinant, rank_over_rationals
from .plocal import EngineInconsistency, p_local_elementary_divisors
from .profile import ElementaryDivisorProfile, SnfResult, valuation
from .snf import smith_normal_form
from .spectrum import certified_rank_pair, char_poly_free_spectrum_check, determinant_from_identity

__all__ = [
    "ElementaryDivisorProfile",
    "EngineInconsistency",
    "SnfResult",
    "certified_rank_pair",
    "char_poly_free_spectrum_check",
    "determinant",
    "determinant_from_identity",
    "filtration_bases",
    "filtration_dims",
    "p_local_elementary_divisors",
    "rank_over_rationals",
    "smith_normal_form",
    "valuation",
]
