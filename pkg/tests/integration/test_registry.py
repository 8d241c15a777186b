from fractions import Fraction

import pytest

from src.qrtw.calculus import partial
from src.qrtw.maps import iterate_orbit
from src.qrtw.registry import ParameterAssignment, instantiate, list_examples, load_formulas, reduced
from src.qrtw.utils import DenominatorVanishes, UnknownExample

CATALOGUE = ['mcm4d', 'mcm4d-alt-gamma', 'mcm4d-alt-h2', 'adler-yamilov', 'yb38', 'mcm6d']


def test_catalogue_listing():
    assert [s.name for s in list_examples()] == CATALOGUE
    assert [s.name for s in list_examples(6)] == ['mcm6d']
    assert len(list_examples(4)) == 5


@pytest.mark.parametrize('name', CATALOGUE)
def test_every_example_loads_with_confirmed_constraints(name):
    bundle = instantiate(name)
    assert bundle.branches
    assert bundle.reduced.maps
    assert all(outcome.positive for outcome in bundle.load_checks.values())
    for branch in bundle.branches:
        assert branch.map.is_endomorphism
        assert branch.map.variables == bundle.variables


def test_unknown_names_and_parameters():
    with pytest.raises(UnknownExample):
        instantiate('mcm5d')
    with pytest.raises(ValueError):
        instantiate('mcm4d', ParameterAssignment.parse(['zeta=1']))
    with pytest.raises(ValueError):
        ParameterAssignment.parse(['a'])


def test_parameters_stay_symbolic_until_given():
    symbolic = instantiate('mcm4d')
    assert 'a' in symbolic.maps['phi'].components[2].used_symbols()
    numeric = instantiate('mcm4d', ParameterAssignment.parse(['a=1']))
    assert 'a' not in numeric.maps['phi'].components[2].used_symbols()
    assert numeric.params.describe() == {'a': '1'}


def test_mcmillan_map_at_a_point():
    bundle = instantiate('mcm4d', ParameterAssignment.parse(['a=1']))
    image = bundle.maps['phi'].image({'x1': 1, 'x2': 2, 'y1': 3, 'y2': Fraction(1, 2)})
    assert image == (3, Fraction(1, 2), Fraction(5, 3), 6)
    h1 = bundle.function('h1')
    before = {'x1': 1, 'x2': 2, 'y1': 3, 'y2': Fraction(1, 2)}
    after = dict(zip(bundle.variables, image))
    assert h1.evaluate(before) == h1.evaluate(after)


def test_yb38_third_branch():
    bundle = instantiate('yb38', ParameterAssignment.parse(['a=2', 'b=1']))
    image = bundle.maps['phi_bar'].image({'x1': 1, 'x2': 2, 'y1': 3, 'y2': 4})
    assert image == (2, Fraction(10, 3), Fraction(5, 3), 3)
    assert set(reduced('yb38').maps) == {'phi_red', 'phi_hat_red', 'phi_bar_red'}


def test_reduced_mcmillan_orbit():
    system = reduced('mcm4d', ParameterAssignment.parse(['a=1', 'k=2']))
    phi = system.maps['phi_red'].map
    assert phi.image({'u1': 1, 'v1': 3}) == (3, 2)
    assert system.invariant.evaluate({'u1': 1, 'v1': 3}) == -6

    with pytest.raises(DenominatorVanishes) as info:
        iterate_orbit(phi, {'u1': 1, 'v1': 3}, steps=5, invariants={'h': system.invariant})
    assert info.value.step == 2

    record = iterate_orbit(phi, {'u1': 1, 'v1': 5}, steps=20, invariants={'h': system.invariant})
    assert record.invariants_constant
    assert record.invariant_values[-1] == [Fraction(-10)]

    floating = iterate_orbit(phi, {'u1': 1, 'v1': 5}, steps=5, invariants={'h': system.invariant},
                             arithmetic='float')
    for exact_point, float_point in zip(record.points, floating.points):
        assert all(abs(float(e) - f) <= 1e-9 * max(1.0, abs(f)) for e, f in zip(exact_point, float_point))


def test_reduced_invariant_derivative_matches_finite_difference():
    h = reduced('mcm4d', ParameterAssignment.parse(['a=1', 'k=2'])).invariant
    slope = partial(h, 'v1').evaluate({'u1': 1, 'v1': 3})
    assert slope == -2
    step = 1e-5
    upper = h.evaluate({'u1': 1.0, 'v1': 3.0 + step}, exact=False)
    lower = h.evaluate({'u1': 1.0, 'v1': 3.0 - step}, exact=False)
    assert abs((upper - lower) / (2 * step) - float(slope)) < 1e-6 * abs(float(slope))


def test_formula_files_declare_every_symbol():
    for name in CATALOGUE:
        formulas = load_formulas(name)
        assert formulas.names
