"""
Structural checks on rational maps.

Each check builds a ``sides`` function over points and hands it to a
Certifier, so one code path serves exact and randomized modes. Results are
CheckOutcome records whose status names the verdict.
"""

import logging
from typing import Mapping, Optional

from ..algebra import (
    CheckOutcome, Certifier, RationalFunction, composed_degree, degree_bound, determinant_degree,
    jacobian_row_degree, side_degree
)
from ..calculus import (
    VectorField, WeightedVolumeForm, divergence, forms_at, jacobian, lie_bracket_at, partial,
    pullback_two_form_at, two_form_at
)
from .rational_map import RationalMap

logger = logging.getLogger(__name__)


def _certifier(m: RationalMap, certifier: Optional[Certifier]) -> Certifier:
    return certifier or Certifier(m.field)


def commutator_degree(f: RationalMap, g: RationalMap) -> int:
    """Degree bound for f o g == g o f."""
    s, t = side_degree(*f.components), side_degree(*g.components)
    return degree_bound(composed_degree(s, t, len(f.variables)), composed_degree(t, s, len(g.variables)))


def _bracket_degree(X: VectorField, Y: VectorField) -> int:
    # sum_j X_j dY_i/dx_j - Y_j dX_i/dx_j over one denominator per row
    n, s, t = len(X.variables), side_degree(*X.components), side_degree(*Y.components)
    return degree_bound(jacobian_row_degree(s) + jacobian_row_degree(t) + n * (s + t))


def _pullback_degree(omega: WeightedVolumeForm, m: RationalMap) -> int:
    # each term is (c o m) times a 2x2 minor taken from two Jacobian rows
    t = side_degree(*m.components)
    weight = composed_degree(side_degree(*omega.coefficients.values()), t, len(m.targets))
    return len(omega.coefficients) * (weight + 2 * jacobian_row_degree(t))


def check_involution(m: RationalMap, certifier: Optional[Certifier] = None) -> CheckOutcome:
    """m o m = id."""
    certifier = _certifier(m, certifier)

    def sides(point):
        return m.image(m.apply(point)), tuple(point[v] for v in m.variables)

    t = side_degree(*m.components)
    result = certifier.certify(sides, degree_bound(composed_degree(t, t, len(m.variables)), 1))
    return CheckOutcome.from_identity(result, 'yes', 'no')


def check_invariant(m: RationalMap, h: RationalFunction, certifier: Optional[Certifier] = None) -> CheckOutcome:
    """h o m = h."""
    certifier = _certifier(m, certifier)

    def sides(point):
        return h.at(m.apply(point)), h.at(point)

    result = certifier.certify(sides, degree_bound(
        composed_degree(side_degree(h), side_degree(*m.components), len(m.variables)), side_degree(h)
    ))
    return CheckOutcome.from_identity(result, 'invariant', 'violated')


def check_equal_maps(first: RationalMap, second: RationalMap,
                     certifier: Optional[Certifier] = None) -> CheckOutcome:
    """Componentwise equality of two maps with the same targets."""
    certifier = _certifier(first, certifier)
    result = certifier.certify(
        lambda p: (first.image(p), second.image(p)),
        degree_bound(side_degree(*first.components), side_degree(*second.components))
    )
    return CheckOutcome.from_identity(result, 'equal', 'different')


def check_factorization(m: RationalMap, outer: RationalMap, inner: RationalMap,
                        certifier: Optional[Certifier] = None) -> CheckOutcome:
    """m = outer o inner."""
    certifier = _certifier(m, certifier)

    def sides(point):
        return m.image(point), outer.image(inner.apply(point))

    composed = composed_degree(side_degree(*outer.components), side_degree(*inner.components), len(outer.variables))
    result = certifier.certify(sides, degree_bound(side_degree(*m.components), composed))
    return CheckOutcome.from_identity(result, 'yes', 'no')


def check_pushforward_sign(m: RationalMap, X: VectorField, certifier: Optional[Certifier] = None,
                           expected: Optional[int] = None) -> CheckOutcome:
    """Decide Dm . X = +X o m, -X o m, or neither."""
    certifier = _certifier(m, certifier)
    jac = jacobian(m)

    def sides(point):
        return jac.apply_at(X.at(point), point), X.at(m.apply(point))

    n, t = len(m.variables), side_degree(*m.components)
    lhs = jacobian_row_degree(t) + n * side_degree(*X.components)
    signed = certifier.certify_signed(sides, degree_bound(lhs, composed_degree(side_degree(*X.components), t, n)))
    return CheckOutcome.from_sign(signed, expected)


def check_volume_sign(m: RationalMap, density: RationalFunction, certifier: Optional[Certifier] = None,
                      expected: Optional[int] = None) -> CheckOutcome:
    """det(Dm) * density / (density o m) == +1 or -1."""
    certifier = _certifier(m, certifier)
    jac = jacobian(m)

    def sides(point):
        return jac.determinant_at(point) * density.at(point), density.at(m.apply(point))

    n, t, s = len(m.variables), side_degree(*m.components), side_degree(density)
    signed = certifier.certify_signed(sides, degree_bound(determinant_degree(t, n) + s, composed_degree(s, t, n)))
    return CheckOutcome.from_sign(signed, expected)


def check_jacobian_determinant(m: RationalMap, claim: RationalFunction,
                               certifier: Optional[Certifier] = None) -> CheckOutcome:
    """det(Dm) == claim."""
    certifier = _certifier(m, certifier)
    jac = jacobian(m)
    result = certifier.certify(
        lambda p: (jac.determinant_at(p), claim.at(p)),
        degree_bound(determinant_degree(side_degree(*m.components), len(m.variables)), side_degree(claim))
    )
    return CheckOutcome.from_identity(result, 'confirmed', 'violated')


def check_divergence_free(X: VectorField, sigma: Optional[RationalFunction] = None,
                          certifier: Optional[Certifier] = None) -> CheckOutcome:
    """div(X / sigma) == 0."""
    certifier = certifier or Certifier(X.field)
    div = divergence(X, sigma)
    result = certifier.certify(lambda p: (div.at(p), 0), degree_bound(side_degree(div)))
    return CheckOutcome.from_identity(result, 'confirmed', 'violated')


def check_annihilates(X: VectorField, h: RationalFunction, certifier: Optional[Certifier] = None) -> CheckOutcome:
    """X . grad(h) == 0."""
    certifier = certifier or Certifier(X.field)
    gradients = [partial(h, v) for v in X.variables]

    def sides(point):
        total = 0
        for component, gradient in zip(X.components, gradients):
            if not component.is_zero and not gradient.is_zero:
                total = total + component.at(point) * gradient.at(point)
        return total, 0

    lhs = jacobian_row_degree(side_degree(h)) + len(X.variables) * side_degree(*X.components)
    result = certifier.certify(sides, degree_bound(lhs))
    return CheckOutcome.from_identity(result, 'confirmed', 'violated')


def check_fields_equal(X: VectorField, Y: VectorField, certifier: Optional[Certifier] = None) -> CheckOutcome:
    certifier = certifier or Certifier(X.field)
    degree = degree_bound(side_degree(*X.components), side_degree(*Y.components))
    result = certifier.certify(lambda p: (X.at(p), Y.at(p)), degree)
    return CheckOutcome.from_identity(result, 'confirmed', 'violated')


def check_bracket_vanishes(X: VectorField, Y: VectorField, certifier: Optional[Certifier] = None) -> CheckOutcome:
    """[X, Y] == 0."""
    certifier = certifier or Certifier(X.field)
    zero = tuple(0 for _ in X.variables)
    result = certifier.certify(lambda p: (lie_bracket_at(X, Y, p), zero),
                               _bracket_degree(X, Y))
    return CheckOutcome.from_identity(result, 'commutes', 'violated')


def check_commuting_square(phi: RationalMap, psi: RationalMap, pi: RationalMap,
                           levels: Optional[Mapping[str, RationalFunction]] = None,
                           certifier: Optional[Certifier] = None) -> CheckOutcome:
    """pi o phi == psi o pi, with psi's level parameters set to ambient functions.

    ``levels`` maps a parameter of psi (for example ``k``) to the ambient
    invariant whose value it takes on each fiber.
    """
    if tuple(pi.targets) != tuple(psi.variables):
        raise ValueError(f"{pi.name} does not land in the domain of {psi.name}")
    certifier = _certifier(phi, certifier)
    levels = dict(levels or {})

    def sides(point):
        lhs = pi.image(phi.apply(point))
        projected = pi.apply(point)
        for name, level in levels.items():
            projected[name] = level.at(point)
        return lhs, psi.image(projected)

    inner = side_degree(*pi.components, *levels.values())
    lhs = composed_degree(side_degree(*pi.components), side_degree(*phi.components), len(phi.variables))
    rhs = composed_degree(side_degree(*psi.components), inner, len(psi.variables) + len(levels))
    result = certifier.certify(sides, degree_bound(lhs, rhs))
    return CheckOutcome.from_identity(result, 'commutes', 'violated')


def check_lift(reduced_invariant: RationalFunction, pi: RationalMap, ambient_invariant: RationalFunction,
               levels: Optional[Mapping[str, RationalFunction]] = None,
               certifier: Optional[Certifier] = None) -> CheckOutcome:
    """reduced_invariant o pi == ambient_invariant on every level set."""
    certifier = _certifier(pi, certifier)
    levels = dict(levels or {})

    def sides(point):
        projected = pi.apply(point)
        for name, level in levels.items():
            projected[name] = level.at(point)
        return reduced_invariant.at(projected), ambient_invariant.at(point)

    inner = side_degree(*pi.components, *levels.values())
    lhs = composed_degree(side_degree(reduced_invariant), inner, len(pi.targets) + len(levels))
    result = certifier.certify(sides, degree_bound(lhs, side_degree(ambient_invariant)))
    return CheckOutcome.from_identity(result, 'confirmed', 'violated')


def check_projection_jacobian(pi: RationalMap, claim: RationalFunction,
                              certifier: Optional[Certifier] = None) -> CheckOutcome:
    """det(D pi) == claim o pi for a change of coordinates pi."""
    certifier = _certifier(pi, certifier)
    jac = jacobian(pi)
    result = certifier.certify(
        lambda p: (jac.determinant_at(p), claim.at(pi.apply(p))),
        degree_bound(
            determinant_degree(side_degree(*pi.components), len(pi.variables)),
            composed_degree(side_degree(claim), side_degree(*pi.components), len(pi.targets))
        )
    )
    return CheckOutcome.from_identity(result, 'confirmed', 'violated')


def check_field_transport(pi: RationalMap, X: VectorField, X_new: VectorField,
                          certifier: Optional[Certifier] = None) -> CheckOutcome:
    """D pi . X == X_new o pi."""
    certifier = _certifier(pi, certifier)
    jac = jacobian(pi)
    result = certifier.certify(
        lambda p: (jac.apply_at(X.at(p), p), X_new.at(pi.apply(p))),
        degree_bound(
            jacobian_row_degree(side_degree(*pi.components)) + len(pi.variables) * side_degree(*X.components),
            composed_degree(side_degree(*X_new.components), side_degree(*pi.components), len(pi.targets))
        )
    )
    return CheckOutcome.from_identity(result, 'confirmed', 'violated')


def check_function_transport(pi: RationalMap, h: RationalFunction, h_new: RationalFunction,
                             certifier: Optional[Certifier] = None) -> CheckOutcome:
    """h == h_new o pi."""
    certifier = _certifier(pi, certifier)
    result = certifier.certify(lambda p: (h.at(p), h_new.at(pi.apply(p))),
                               degree_bound(
                                   side_degree(h),
                                   composed_degree(side_degree(h_new), side_degree(*pi.components), len(pi.targets))
                               ))
    return CheckOutcome.from_identity(result, 'confirmed', 'violated')


def check_commutativity(f: RationalMap, g: RationalMap, certifier: Optional[Certifier] = None) -> CheckOutcome:
    """f o g == g o f."""
    certifier = _certifier(f, certifier)

    def sides(point):
        return f.image(g.apply(point)), g.image(f.apply(point))

    result = certifier.certify(sides, commutator_degree(f, g))
    return CheckOutcome.from_identity(result, 'commutes', 'violated')


def check_fiber_structure(m: RationalMap, fiber_var: str, sign: int,
                          certifier: Optional[Certifier] = None) -> CheckOutcome:
    """The fiber coordinate maps as v -> alpha * v**sign with alpha free of v."""
    if sign not in (1, -1):
        raise ValueError("fiber sign must be +1 or -1")
    certifier = _certifier(m, certifier)
    v = m.field.gen(fiber_var)
    component = m.components[list(m.targets).index(fiber_var)]
    alpha = component / v if sign == 1 else component * v
    derivative = partial(alpha, fiber_var)
    result = certifier.certify(lambda p: (derivative.at(p), 0), degree_bound(side_degree(derivative)))
    return CheckOutcome.from_identity(result, 'confirmed', 'violated', detail=f"alpha = {alpha}")


def check_gamma_constraint(lhs: RationalFunction, rhs: RationalFunction,
                           certifier: Optional[Certifier] = None) -> CheckOutcome:
    """A polynomial relation between the gamma functions, e.g. g3*g4 == g1*g2."""
    certifier = certifier or Certifier(lhs.field)
    result = certifier.certify(lambda p: (lhs.at(p), rhs.at(p)), degree_bound(side_degree(lhs), side_degree(rhs)))
    return CheckOutcome.from_identity(result, 'confirmed', 'violated')


def check_forms_equal(first: WeightedVolumeForm, second: WeightedVolumeForm,
                      certifier: Optional[Certifier] = None) -> CheckOutcome:
    """Coefficientwise equality of two forms on the same coordinates."""
    if first.variables != second.variables or first.degree != second.degree:
        return CheckOutcome('violated', False, detail="forms have different coordinates or degree")
    coefficients = list(first.coefficients.values()) + list(second.coefficients.values())
    if not coefficients:
        return CheckOutcome('confirmed', True)
    certifier = certifier or Certifier(coefficients[0].field)
    result = certifier.certify(lambda p: forms_at(first, second, p), degree_bound(
        side_degree(*first.coefficients.values()), side_degree(*second.coefficients.values())
    ))
    return CheckOutcome.from_identity(result, 'confirmed', 'violated')


def two_form_preserved(m: RationalMap, omega: WeightedVolumeForm,
                       certifier: Optional[Certifier] = None) -> CheckOutcome:
    """m^* omega == omega for a 2-form on m's own coordinates."""
    certifier = _certifier(m, certifier)
    jac = jacobian(m)
    result = certifier.certify(
        lambda p: (pullback_two_form_at(omega, m, p, jac), two_form_at(omega, p)),
        degree_bound(_pullback_degree(omega, m), side_degree(*omega.coefficients.values()))
    )
    return CheckOutcome.from_identity(result, 'preserved', 'violated')


def check_two_form_pullback(pi: RationalMap, omega: WeightedVolumeForm, expected: WeightedVolumeForm,
                            certifier: Optional[Certifier] = None) -> CheckOutcome:
    """pi^* omega == expected, with omega on pi's targets and expected on pi's variables."""
    certifier = _certifier(pi, certifier)
    jac = jacobian(pi)
    result = certifier.certify(
        lambda p: (pullback_two_form_at(omega, pi, p, jac), two_form_at(expected, p)),
        degree_bound(_pullback_degree(omega, pi), side_degree(*expected.coefficients.values()))
    )
    return CheckOutcome.from_identity(result, 'confirmed', 'violated')
