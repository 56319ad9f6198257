"""Exact arithmetic: rationals, sparse polynomials, polynomial matrices,
resultants and truncated power series."""

from fractions import Fraction as Rat

from .linalg import SingularSystemError, SparseEchelon, det, inverse, nullspace, rank, rref, solve
from .matrix import DimensionError, PolyMatrix, bareiss_det, poly_det
from .polynomial import (
    PolyParseError,
    RationalPoly,
    dumps_poly,
    format_poly,
    loads_poly,
    parse_poly,
    poly_from_dict,
    poly_to_dict,
)
from .resultant import binary_discriminant_nonzero, resultant, square_part
from .series import NotInvertibleError, TruncSeries, rational_sqrt, series_sqrt

__all__ = [
    "Rat",
    "RationalPoly",
    "PolyMatrix",
    "TruncSeries",
    "PolyParseError",
    "DimensionError",
    "NotInvertibleError",
    "SingularSystemError",
    "SparseEchelon",
    "parse_poly",
    "format_poly",
    "loads_poly",
    "dumps_poly",
    "poly_to_dict",
    "poly_from_dict",
    "poly_det",
    "bareiss_det",
    "resultant",
    "square_part",
    "binary_discriminant_nonzero",
    "series_sqrt",
    "rational_sqrt",
    "det",
    "rank",
    "rref",
    "solve",
    "nullspace",
    "inverse",
]
