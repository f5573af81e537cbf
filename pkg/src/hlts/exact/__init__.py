"""Exact scalars, matrices, sparse tensors and truncated polynomials."""

from .matrix import Matrix, block, inverse, is_invertible, kernel_basis, rank, solve, in_span
from .scalar import Scalar, format_scalar, parse_scalar, RationalParseError
from .tensor import Tensor, Term, ap, witnesses
from .trunc import TruncPoly

__all__ = [
    "Matrix", "block", "inverse", "is_invertible", "kernel_basis", "rank", "solve", "in_span",
    "Scalar", "format_scalar", "parse_scalar", "RationalParseError",
    "Tensor", "Term", "ap", "witnesses", "TruncPoly",
]
