import re
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from config import CheckMode, ModePolicy
from src.qrtw.algebra import rf_equal
from src.qrtw.registry import catalogue_entry, instantiate
from src.qrtw.verify import SuiteRunner

MUTATED = ('mcm4d', 'adler-yamilov')


@pytest.fixture(scope='module')
def mcmillan():
    return instantiate('mcm4d')


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_exact_and_randomized_equality_agree(mcmillan, data):
    pool = [f for branch in mcmillan.branches for f in (*branch.invariants.values(), *branch.gammas.values())]
    index = st.integers(min_value=0, max_value=len(pool) - 1)
    left, first, second = pool[data.draw(index)], pool[data.draw(index)], pool[data.draw(index)]
    shape = data.draw(st.sampled_from(['same', 'shifted', 'cancelled', 'product']))
    right = {
        'same': first,
        'shifted': first + 1,
        'cancelled': first * second / second,
        'product': first * second,
    }[shape]
    seed = data.draw(st.integers(min_value=0, max_value=2 ** 16))

    exact = rf_equal(left, right)
    randomized = rf_equal(left, right, mode=CheckMode.RANDOMIZED, trials=10, seed=seed)
    assert exact.holds == randomized.holds
    if not exact.holds:
        assert exact.witness is not None
        witness = randomized.witness
        assert witness is not None
        assert left.evaluate(witness) != right.evaluate(witness)


def _mutations():
    cases = []
    for name in MUTATED:
        entry = catalogue_entry(name)
        for index, branch in enumerate(entry['branches']):
            for map_name in [branch['map'], *branch.get('involutions', [])]:
                for component in range(len(entry['variables'])):
                    cases.append(pytest.param(name, index, map_name, component,
                                              id=f"{name}-{branch['map']}-{map_name}[{component}]"))
            for h_name in branch['invariants']:
                cases.append(pytest.param(name, index, h_name, None, id=f"{name}-{branch['map']}-{h_name}"))
    return cases


def _perturbed(name: str, index: int, target: str, component):
    """The bundle with one map component shifted by 1, or one invariant shifted by its first variable."""
    bundle = instantiate(name)
    branch = bundle.branches[index]
    if component is None:
        # a constant shift keeps an invariant invariant
        shifted = branch.invariants[target] + bundle.field.gen(bundle.variables[0])
        branch = replace(branch, invariants={**branch.invariants, target: shifted})
    else:
        m = branch.map if target == branch.name else branch.involutions[target]
        components = list(m.components)
        components[component] = components[component] + 1
        m = replace(m, components=tuple(components))
        if target == branch.name:
            branch = replace(branch, map=m)
        else:
            branch = replace(branch, involutions={**branch.involutions, target: m})
    branches = list(bundle.branches)
    branches[index] = branch
    return replace(bundle, branches=branches)


@pytest.mark.parametrize('name, index, target, component', _mutations())
def test_every_perturbation_is_caught_with_witness(name, index, target, component):
    runner = SuiteRunner(_perturbed(name, index, target, component), ModePolicy.all_exact(seed=3))
    runner.invariance()
    failures = [r for r in runner.results.values() if not r.positive]
    caught = [r for r in failures if target in re.split(r'[:=∘]', r.check_id)[1:]]
    assert caught, f"no check noticed the change to {target}"
    assert all(r.status != 'error' for r in caught)
    assert any(r.witness is not None and r.lhs != r.rhs for r in caught)
