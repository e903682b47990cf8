"""Skew-incidence matrices of subspaces of F_p^4 and their elementary divisors."""

from .exact import (
    ElementaryDivisorProfile,
    SnfResult,
    determinant,
    filtration_dims,
    p_local_elementary_divisors,
    smith_normal_form,
)
from .geometry import ResourceGuardError, Subspace, SubspaceFamily, enumerate_subspaces, gaussian_binomial
from .gfp import FpMatrix, Prime, kernel_basis_mod_p, rank_mod_p, rref
from .incidence import IncidenceSpec, build_eta, build_phi, build_psi, skew_matrix
from .theorem import closed_forms, multiplicity_polynomial_identities, verify_rank_structure, verify_theorem

__version__ = "0.1.0"

__all__ = [
    "ElementaryDivisorProfile",
    "FpMatrix",
    "IncidenceSpec",
    "Prime",
    "ResourceGuardError",
    "SnfResult",
    "Subspace",
    "SubspaceFamily",
    "build_eta",
    "build_phi",
    "build_psi",
    "closed_forms",
    "determinant",
    "enumerate_subspaces",
    "filtration_dims",
    "gaussian_binomial",
    "kernel_basis_mod_p",
    "multiplicity_polynomial_identities",
    "p_local_elementary_divisors",
    "rank_mod_p",
    "rref",
    "skew_matrix",
    "smith_normal_form",
    "verify_rank_structure",
    "verify_theorem",
]
