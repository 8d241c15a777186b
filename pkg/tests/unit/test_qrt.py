import pytest
from hypothesis import given, settings, strategies as st

from src.qrtw.algebra import FunctionField
from src.qrtw.maps import RationalMap, check_invariant, compose
from src.qrtw.qrt import build_qrt, qrt_order, switch, validate_biquadratic
from src.qrtw.utils import DegenerateSwitch, NotBiquadratic

FIELD = FunctionField(('u', 'v'), ('a',))
U, V, A = FIELD.gen('u'), FIELD.gen('v'), FIELD.gen('a')
MCMILLAN = U ** 2 * V ** 2 + U ** 2 + V ** 2 - 2 * A * U * V


def test_switches_of_a_circle():
    invariant = validate_biquadratic(U ** 2 + V ** 2, 'u', 'v')
    horizontal = switch(invariant, 'u')
    assert horizontal.components == (-U, V)
    qrt = build_qrt(invariant)
    assert qrt.components[0] == -U
    assert qrt.components[1] == -V


def test_mcmillan_switches_are_vieta_involutions():
    invariant = validate_biquadratic(MCMILLAN, 'u', 'v')
    horizontal = switch(invariant, 'u')
    vertical = switch(invariant, 'v')
    assert horizontal.components[0] == 2 * A * V / (1 + V ** 2) - U
    assert vertical.components[1] == 2 * A * U / (1 + U ** 2) - V
    assert check_invariant(build_qrt(invariant), MCMILLAN).status == 'invariant'


def test_switch_order_is_detected():
    invariant = validate_biquadratic(MCMILLAN, 'u', 'v')
    horizontal = switch(invariant, 'u', name='H')
    vertical = switch(invariant, 'v', name='V')
    assert qrt_order(compose(vertical, horizontal), invariant).status == 'horizontal-first'
    assert qrt_order(compose(horizontal, vertical), invariant).status == 'vertical-first'
    swap = RationalMap('swap', ('u', 'v'), (V, U))
    outcome = qrt_order(swap, invariant)
    assert outcome.status == 'neither'
    assert not outcome.positive


def test_rational_invariants_use_cleared_denominators():
    h = (U ** 2 + V ** 2 + 1) / (U * V)
    invariant = validate_biquadratic(h, 'u', 'v')
    assert check_invariant(build_qrt(invariant), h).status == 'invariant'


def test_rejects_non_biquadratic_and_degenerate():
    with pytest.raises(NotBiquadratic):
        validate_biquadratic(U ** 3 + V, 'u', 'v')
    with pytest.raises(NotBiquadratic):
        validate_biquadratic(U ** 2 + 1, 'u', 'v')
    with pytest.raises(DegenerateSwitch):
        build_qrt(validate_biquadratic(U * V + U + V, 'u', 'v'))
    with pytest.raises(ValueError):
        switch(validate_biquadratic(MCMILLAN, 'u', 'v'), 'a')


coefficient = st.integers(min_value=-3, max_value=3)


@settings(max_examples=25, deadline=None)
@given(coefficient, st.integers(min_value=1, max_value=3), coefficient, coefficient)
def test_switched_roots_satisfy_vieta(p, q, r, s):
    h = p * U ** 2 * V ** 2 + U ** 2 + q * V ** 2 + r * U * V + s * U
    invariant = validate_biquadratic(h, 'u', 'v')

    u_root = switch(invariant, 'u').components[0]
    leading = p * V ** 2 + 1
    assert U + u_root == -(r * V + s) / leading
    assert U * u_root == (q * V ** 2 - h) / leading
    assert h.substitute({'u': u_root}) == h

    v_root = switch(invariant, 'v').components[1]
    leading = p * U ** 2 + q
    assert V + v_root == -(r * U) / leading
    assert V * v_root == (U ** 2 + s * U - h) / leading
    assert h.substitute({'v': v_root}) == h
