"""Exact arithmetic: rationals, sparse polynomials, series and linear algebra."""

from fractions import Fraction

from .linalg import PolyMatrix, RankResult, det_fraction_free, numeric_det, rank_and_kernel, rank_at
from .poly import MultiPoly, Rational, parse_poly, parse_rational, poly_arith, poly_vars, render
from .series import TruncSeries

__all__ = [
    "Fraction", "MultiPoly", "PolyMatrix", "RankResult", "Rational", "TruncSeries",
    "det_fraction_free", "numeric_det", "parse_poly", "parse_rational", "poly_arith",
    "poly_vars", "rank_and_kernel", "rank_at", "render",
]
