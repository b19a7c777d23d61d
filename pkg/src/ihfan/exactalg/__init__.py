"""Exact scalars, polynomials, rational functions and linear algebra."""

from .scalar import (QuadElt, FieldMismatch, parse_scalar, to_str, sign,
                     sqrt_of, to_float, field_of)
from .poly import Poly, monomials, monomial_index, DimensionMismatch
from .ratfn import RationalFn, ratfn_sum_reduce
from .linalg import (Echelon, rref, rank, kernel, solve, det, inverse, matmul,
                     transpose, identity, leading_pivots, sparse, dense)
from .graded import poly_arith, restrict_to_span, graded_solve
