import pytest
from hypothesis import given, settings, strategies as st

from src.qrtw.algebra import FunctionField
from src.qrtw.calculus import (
    SymplecticDensity, VectorField, WeightedVolumeForm, basis_combination, contract,
    differential_wedge, divergence, jacobian, lie_bracket, pullback_two_form, symmetry_basis,
    symplectic_check_2d
)
from src.qrtw.maps import RationalMap, compose
from src.qrtw.utils import SingularSystem


def test_jacobian_and_determinant(plane):
    x, y, a = plane.gen('x'), plane.gen('y'), plane.gen('a')
    m = RationalMap('m', ('x', 'y'), (y, -x + 2 * a * y / (1 + y ** 2)))
    jac = jacobian(m)
    assert jac.rows[0][1] == 1
    assert jac.rows[1][0] == -1
    assert jac.determinant() == 1


def test_divergence_and_bracket(plane):
    x, y = plane.gen('x'), plane.gen('y')
    rotation = VectorField(('x', 'y'), (-y, x), 'R')
    euler = VectorField(('x', 'y'), (x, y), 'E')
    shear = VectorField(('x', 'y'), (y, plane.zero), 'S')
    assert divergence(rotation).is_zero
    assert divergence(euler) == 2
    assert divergence(euler, x) == 1 / x
    assert all(c.is_zero for c in lie_bracket(rotation, euler).components)
    assert not all(c.is_zero for c in lie_bracket(rotation, shear).components)


def test_contraction_of_top_form():
    field = FunctionField(('x', 'y', 'z'))
    x, y, z = field.gen('x'), field.gen('y'), field.gen('z')
    volume = WeightedVolumeForm.volume(('x', 'y', 'z'), x)
    X = VectorField(('x', 'y', 'z'), (field.zero, field.zero, z), 'Z')
    omega = contract(X, volume)
    assert omega.degree == 2
    assert omega.coefficient(('x', 'y')) == z / x
    assert omega.coefficient(('y', 'x')) == -z / x
    assert omega.coefficient(('x', 'z')) == 0


def test_from_terms_sorts_with_sign():
    field = FunctionField(('u', 'v', 'w'))
    u = field.gen('u')
    form = WeightedVolumeForm.from_terms(('u', 'v', 'w'), [(('w', 'u'), u), (('u', 'w'), field.one)])
    assert form.coefficient(('u', 'w')) == 1 - u
    with pytest.raises(ValueError):
        WeightedVolumeForm.from_terms(('u', 'v', 'w'), [(('u',), u), (('u', 'v'), u)])


def test_differential_wedge():
    field = FunctionField(('u', 'v', 'w'))
    u, v = field.gen('u'), field.gen('v')
    form = differential_wedge(u * v, ('u', 'v', 'w'), ('w',), scale=1 / u)
    assert form.coefficient(('u', 'w')) == v / u
    assert form.coefficient(('v', 'w')) == 1


def test_pullback_of_area_form(plane):
    x, y = plane.gen('x'), plane.gen('y')
    area = WeightedVolumeForm.top(('x', 'y'), plane.one)
    swap = RationalMap('swap', ('x', 'y'), (y, x))
    pulled = pullback_two_form(area, swap)
    assert pulled.coefficient(('x', 'y')) == -1


def test_planar_symplectic_check(plane, exact):
    x, y, a = plane.gen('x'), plane.gen('y'), plane.gen('a')
    density = SymplecticDensity(('x', 'y'), plane.one)
    m = RationalMap('m', ('x', 'y'), (y, -x + 2 * a * y / (1 + y ** 2)))
    swap = RationalMap('swap', ('x', 'y'), (y, x))
    squash = RationalMap('squash', ('x', 'y'), (x, 2 * y))
    assert symplectic_check_2d(m, density, exact).status == 'preserved'
    assert symplectic_check_2d(swap, density, exact).status == 'anti-preserved'
    outcome = symplectic_check_2d(squash, density, exact)
    assert outcome.status == 'violated'
    assert outcome.evidence.witness is not None


def test_symmetry_basis_recovers_field():
    field = FunctionField(('x1', 'x2', 'y1', 'y2'))
    x1, x2, y1, y2 = (field.gen(n) for n in ('x1', 'x2', 'y1', 'y2'))
    invariants = [x1 * y1, x2 * y2]
    basis = symmetry_basis(invariants, ('x1', 'x2', 'y1', 'y2'), ('x1', 'x2'))
    assert len(basis) == 2
    assert basis[0].components[2] == -y1 / x1
    X = VectorField(('x1', 'x2', 'y1', 'y2'), (x1, -x2, -y1, y2), 'X')
    recovered = basis_combination(X, basis, ('x1', 'x2'))
    assert all(a == b for a, b in zip(recovered.components, X.components))

    with pytest.raises(SingularSystem):
        symmetry_basis([x1 * x2, x2 * x1 ** 2], ('x1', 'x2', 'y1', 'y2'), ('x1', 'x2'))


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=-4, max_value=4), st.integers(min_value=1, max_value=4))
def test_jacobian_chain_rule_and_associativity(p, q):
    field = FunctionField(('x', 'y'), ('a',))
    x, y, a = field.gen('x'), field.gen('y'), field.gen('a')
    f = RationalMap('f', ('x', 'y'), (y, -x + 2 * a * y / (1 + y ** 2)))
    g = RationalMap('g', ('x', 'y'), (x + p * y, y / (x ** 2 + q)))
    h = RationalMap('h', ('x', 'y'), (x * y + q, x - p))

    fg = compose(f, g)
    inner = dict(zip(g.targets, g.components))
    assert jacobian(fg).determinant() == jacobian(f).determinant().substitute(inner) * jacobian(g).determinant()

    left, right = compose(fg, h), compose(f, compose(g, h))
    assert left.components == right.components
