"""Exact scalars and sparse linear algebra over Q, Q(i) and Q(t)."""

from .matrix import (
    SparseMatrix,
    as_fraction_matrix,
    kernel_basis,
    rank_exact,
    rank_generic,
    rf_matrix,
    row_space_contains,
    rref,
    rref_with_pivots,
    solve,
)
from .scalars import QI, QT, GaussianRational, Q, RationalFunction, Scalar, coerce, format_scalar, parse_scalar, variant_of

__all__ = [
    "SparseMatrix", "rank_exact", "rank_generic", "rref", "rref_with_pivots", "kernel_basis",
    "row_space_contains", "solve", "as_fraction_matrix", "rf_matrix",
    "GaussianRational", "RationalFunction", "Scalar", "Q", "QI", "QT", "coerce", "format_scalar", "parse_scalar",
    "variant_of",
]
