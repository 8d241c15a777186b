import math
import sys
from fractions import Fraction

import pytest

from config import CheckMode, SamplingConfig
from src.qrtw.algebra import (
    Certifier, PointSampler, composed_degree, degree_bound, determinant_degree, jacobian_row_degree, rf_equal,
    side_degree
)


def test_sampler_is_reproducible():
    first = PointSampler(('x', 'y'), seed=3).sample()
    second = PointSampler(('x', 'y'), seed=3).sample()
    assert first == second
    assert all(isinstance(v, Fraction) and v != 0 for v in first.values())


def test_exact_identity_and_witness(plane, exact):
    x, y = plane.gen('x'), plane.gen('y')
    holds = exact.certify(lambda p: ((x + y).at(p) ** 2, (x ** 2 + 2 * x * y + y ** 2).at(p)))
    assert holds.holds and holds.mode is CheckMode.EXACT

    fails = exact.certify(lambda p: ((x + y).at(p) ** 2, (x ** 2 + y ** 2).at(p)))
    assert not fails.holds
    assert fails.witness is not None
    assert fails.lhs != fails.rhs


def test_randomized_identity_reports_bounds(plane, randomized):
    x, y = plane.gen('x'), plane.gen('y')
    f = 1 / (1 - x * y)
    result = randomized.certify(lambda p: (f.at(p), f.at(p)), degree=degree_bound(side_degree(f), side_degree(f)))
    assert result.holds
    assert result.trials == 50
    assert result.degree == 4
    assert 0 < result.per_trial_bound < 1
    assert result.failure_bound == max(result.per_trial_bound ** 50, sys.float_info.min)
    assert result.log10_failure_bound == pytest.approx(50 * math.log10(result.per_trial_bound))


def test_randomized_failure_carries_reproducible_witness(plane):
    x, y = plane.gen('x'), plane.gen('y')
    first = Certifier(plane, CheckMode.RANDOMIZED, trials=20, seed=11).certify(lambda p: (x.at(p), y.at(p)))
    second = Certifier(plane, CheckMode.RANDOMIZED, trials=20, seed=11).certify(lambda p: (x.at(p), y.at(p)))
    assert not first.holds
    assert first.witness == second.witness


def test_signed_identities(plane, exact):
    x, y = plane.gen('x'), plane.gen('y')
    signed = exact.certify_signed(lambda p: ((x - y).at(p), (y - x).at(p)))
    assert signed.sign == -1
    unsigned = exact.certify_signed(lambda p: (x.at(p), (2 * x).at(p)))
    assert unsigned.sign is None


def test_rf_equal_modes(plane):
    x, y = plane.gen('x'), plane.gen('y')
    f = (x ** 2 - y ** 2) / (x + y)
    assert rf_equal(f, x - y)
    assert rf_equal(f, x - y, mode=CheckMode.RANDOMIZED, trials=30,
                    sampling=SamplingConfig(low=-50, high=50))
    assert not rf_equal(f, x + y, mode=CheckMode.RANDOMIZED, trials=30)


def test_sampler_skips_zero_denominators(plane):
    x, y = plane.gen('x'), plane.gen('y')
    f = 1 / (x * y - 1)
    evaluated = []

    def sides(point):
        value = f.at(point)
        evaluated.append(point)
        return value, value

    certifier = Certifier(plane, CheckMode.RANDOMIZED, trials=40, seed=5, sampling=SamplingConfig(low=-1, high=1))
    result = certifier.certify(sides, degree=degree_bound(side_degree(f), side_degree(f)))
    assert result.holds
    assert result.rejected > 0
    assert len(evaluated) == 40
    for point in evaluated:
        assert point['x'] in (-1, 0, 1) and point['y'] in (-1, 0, 1)
        assert plane.from_poly(f.den).evaluate(point) != 0


def test_failure_bound_does_not_underflow(plane):
    x = plane.gen('x')
    certifier = Certifier(plane, CheckMode.RANDOMIZED, trials=2000, seed=2)
    result = certifier.certify(lambda p: (x.at(p), x.at(p)), degree=2 ** 20)
    per_trial = 2 ** 20 / SamplingConfig().sample_space
    assert result.per_trial_bound == pytest.approx(per_trial)
    assert result.failure_bound == sys.float_info.min
    assert result.log10_failure_bound == pytest.approx(2000 * math.log10(per_trial))
    assert math.isfinite(result.log10_failure_bound)


def test_degree_rules_cover_actual_degrees(plane):
    x, y, a = plane.gen('x'), plane.gen('y'), plane.gen('a')
    outer = (x ** 2 / (1 + y), a * y / x)
    inner = (x + y, x * y / (1 - x))
    s, t = side_degree(*outer), side_degree(*inner)
    assert (s, t) == (2, 2)
    assert composed_degree(s, t, 2) == 10

    composite = [c.substitute({'x': inner[0], 'y': inner[1]}) for c in outer]
    assert side_degree(*composite) <= composed_degree(s, t, 2)

    for c in outer + inner:
        for name in ('x', 'y'):
            assert side_degree(c.diff(name)) <= jacobian_row_degree(side_degree(c))
    det = outer[0].diff('x') * outer[1].diff('y') - outer[0].diff('y') * outer[1].diff('x')
    assert side_degree(det) <= determinant_degree(s, 2)

    difference = outer[0] - inner[1]
    assert side_degree(difference) <= degree_bound(s, t)
    assert degree_bound(0, 0) == 1
