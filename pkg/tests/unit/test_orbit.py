import csv
from fractions import Fraction

import pytest

from config import OrbitConfig
from src.qrtw.algebra import FunctionField
from src.qrtw.maps import RationalMap, iterate_orbit
from src.qrtw.qrt import build_qrt, validate_biquadratic
from src.qrtw.utils import BitCapExceeded, DenominatorVanishes

FIELD = FunctionField(('u', 'v'), ('a',))
U, V, A = FIELD.gen('u'), FIELD.gen('v'), FIELD.gen('a')
MCMILLAN = U ** 2 * V ** 2 + U ** 2 + V ** 2 - 2 * A * U * V


def test_exact_orbit_keeps_invariant():
    qrt = build_qrt(validate_biquadratic(MCMILLAN, 'u', 'v'))
    record = iterate_orbit(qrt, {'u': 1, 'v': 2}, steps=6, invariants={'h': MCMILLAN}, parameters={'a': 1})
    assert record.steps == 6
    assert record.invariants_constant
    assert record.invariant_values[0] == [Fraction(5)]
    assert record.points[1][0] == Fraction(-1, 5)


def test_rows_use_rational_strings(tmp_path):
    m = RationalMap('half', ('u', 'v'), (U / 2, V))
    record = iterate_orbit(m, {'u': 1, 'v': 3}, steps=2)
    assert record.rows() == [['1', '3'], ['1/2', '3'], ['1/4', '3']]
    path = record.write_csv(tmp_path / 'orbit.csv')
    with open(path, newline='') as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ['u', 'v']
    assert rows[-1] == ['1/4', '3']


def test_singular_step_is_reported():
    m = RationalMap('m', ('u', 'v'), (1 / U, V - 1))
    with pytest.raises(DenominatorVanishes) as info:
        iterate_orbit(m, {'u': 0, 'v': 1}, steps=3)
    assert info.value.step == 1


def test_bit_cap():
    m = RationalMap('square', ('u', 'v'), (U ** 2, V))
    with pytest.raises(BitCapExceeded):
        iterate_orbit(m, {'u': 3, 'v': 1}, steps=10, config=OrbitConfig(bit_cap=16))


def test_float_mode_flags_drift():
    rotate = RationalMap('rotate', ('u', 'v'), (V, -U))
    steady = iterate_orbit(rotate, {'u': 1, 'v': 2}, steps=8, invariants={'r': U ** 2 + V ** 2},
                           arithmetic='float', config=OrbitConfig.for_float())
    assert steady.invariants_constant
    assert steady.tolerance == 1e-9

    stretch = RationalMap('stretch', ('u', 'v'), (2 * U, V))
    drifting = iterate_orbit(stretch, {'u': 1, 'v': 2}, steps=3, invariants={'u': U},
                             arithmetic='float', config=OrbitConfig.for_float())
    assert drifting.drift_steps == [1, 2, 3]
    assert not drifting.invariants_constant


def test_unknown_arithmetic():
    with pytest.raises(ValueError):
        iterate_orbit(RationalMap('id', ('u', 'v'), (U, V)), {'u': 1, 'v': 1}, arithmetic='interval')
