"""
Exact Algebra

Rational functions over QQ with factored denominators, the function field
they live in, small linear algebra, the formula reader and identity
certification (exact or randomized).
"""

from .rational_function import RationalFunction, to_fraction, is_scalar
from .field import FunctionField
from .linear import determinant, solve_linear, is_zero
from .expressions import FormulaFile, Definition, parse_expression
from .identity import (
    Certifier, CheckOutcome, IdentityResult, SignedResult, PointSampler, rf_equal, as_tuple,
    side_degree, composed_degree, jacobian_row_degree, determinant_degree, degree_bound
)

__all__ = [
    'RationalFunction', 'to_fraction', 'is_scalar',
    'FunctionField',
    'determinant', 'solve_linear', 'is_zero',
    'FormulaFile', 'Definition', 'parse_expression',
    'Certifier', 'CheckOutcome', 'IdentityResult', 'SignedResult', 'PointSampler',
    'rf_equal', 'as_tuple',
    'side_degree', 'composed_degree', 'jacobian_row_degree', 'determinant_degree', 'degree_bound'
]
