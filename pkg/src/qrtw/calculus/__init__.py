"""
Calculus

Partial derivatives, Jacobians, vector fields and Lie brackets, weighted
volume forms with contraction, 2-form pullbacks, planar symplectic checks
and symmetry bases.
"""

from .derivatives import (
    VectorField, JacobianMatrix, partial, jacobian, divergence, lie_bracket, lie_bracket_at
)
from .forms import (
    WeightedVolumeForm, contract, differential_wedge, forms_at,
    pullback_two_form, pullback_two_form_at, two_form_at
)
from .symplectic import SymplecticDensity, symplectic_check_2d
from .symmetries import symmetry_basis, basis_combination

__all__ = [
    'VectorField', 'JacobianMatrix', 'partial', 'jacobian', 'divergence',
    'lie_bracket', 'lie_bracket_at',
    'WeightedVolumeForm', 'contract', 'differential_wedge', 'forms_at',
    'pullback_two_form', 'pullback_two_form_at', 'two_form_at',
    'SymplecticDensity', 'symplectic_check_2d',
    'symmetry_basis', 'basis_combination'
]
