"""
Maps

Rational maps with composition, structural checks (involutions,
invariants, pushforward and volume signs, commuting squares, fiber
structure) and orbit iteration.
"""

from .rational_map import RationalMap, compose
from .checks import (
    check_involution, check_invariant, check_equal_maps, check_factorization,
    check_pushforward_sign, check_volume_sign, check_jacobian_determinant,
    check_divergence_free, check_annihilates, check_fields_equal, check_bracket_vanishes,
    check_commuting_square, check_lift, check_projection_jacobian, check_field_transport,
    check_function_transport, check_commutativity, check_fiber_structure,
    check_gamma_constraint, check_forms_equal, two_form_preserved, check_two_form_pullback, commutator_degree
)
from .orbit import OrbitRecord, iterate_orbit

__all__ = [
    'RationalMap', 'compose',
    'check_involution', 'check_invariant', 'check_equal_maps', 'check_factorization',
    'check_pushforward_sign', 'check_volume_sign', 'check_jacobian_determinant',
    'check_divergence_free', 'check_annihilates', 'check_fields_equal', 'check_bracket_vanishes',
    'check_commuting_square', 'check_lift', 'check_projection_jacobian', 'check_field_transport',
    'check_function_transport', 'check_commutativity', 'check_fiber_structure',
    'check_gamma_constraint', 'check_forms_equal', 'two_form_preserved', 'check_two_form_pullback',
    'commutator_degree',
    'OrbitRecord', 'iterate_orbit'
]
