"""Exact integer linear algebra: sparse matrices, Smith form, homology."""

from .homology import (
    ChainComplex,
    CompositionError,
    HomologySummary,
    complex_homology,
    homology_at,
    merge_invariant_factors,
    poincare_terms,
    torsion_slots,
)
from .intmat import IntegerMatrix
from .kernels import numba_enabled
from .snf import SmithDecomposition, invariant_factors, kernel_basis, rank, smith_normal_form

__all__ = [
    "ChainComplex",
    "CompositionError",
    "HomologySummary",
    "IntegerMatrix",
    "SmithDecomposition",
    "complex_homology",
    "homology_at",
    "invariant_factors",
    "kernel_basis",
    "merge_invariant_factors",
    "numba_enabled",
    "poincare_terms",
    "rank",
    "smith_normal_form",
    "torsion_slots",
]
