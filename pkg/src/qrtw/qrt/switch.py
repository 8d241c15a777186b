"""
QRT switches for biquadratic invariants.

For an invariant h(u, v) = N/D of degree at most two in each variable, the
horizontal switch keeps v and sends u to the second root t of
N(t, v) D(u, v) - N(u, v) D(t, v) = 0. Writing that polynomial as
c0 + c1 t + c2 t^2, the root t = u divides out and the other root is
-(c1 + c2 u) / c2. The QRT map applies the horizontal switch first.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from ..algebra import CheckOutcome, Certifier, RationalFunction
from ..maps import RationalMap, check_equal_maps, compose
from ..utils.error_handler import DegenerateSwitch, NotBiquadratic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BiquadraticInvariant:
    """A rational invariant of the (u, v) plane, biquadratic after clearing denominators."""
    h: RationalFunction
    u: str
    v: str

    @property
    def variables(self) -> Tuple[str, str]:
        return self.u, self.v


def validate_biquadratic(h: RationalFunction, u: str, v: str) -> BiquadraticInvariant:
    """Check numerator and denominator have degree <= 2 in u and in v."""
    for var in (u, v):
        num_degree, den_degree = h.degree_in(var)
        degree = max(num_degree, den_degree)
        if degree > 2:
            raise NotBiquadratic(var, degree)
        if degree == 0:
            raise NotBiquadratic(var, 0)
    return BiquadraticInvariant(h, u, v)


def _coefficients_in(poly, index: int) -> Dict[int, object]:
    """Split a polynomial into its coefficients by powers of one generator."""
    ring = poly.ring
    parts: Dict[int, Dict[Tuple[int, ...], object]] = {}
    for monom, coeff in poly.iterterms():
        stripped = list(monom)
        stripped[index] = 0
        parts.setdefault(monom[index], {})[tuple(stripped)] = coeff
    return {power: ring.from_dict(terms) for power, terms in parts.items()}


def _second_root(h: RationalFunction, var: str) -> RationalFunction:
    field = h.field
    index = field.index(var)
    ring = field.ring
    num, den = h.num, h.den
    n_coeffs = _coefficients_in(num, index)
    d_coeffs = _coefficients_in(den, index)
    c = {
        power: n_coeffs.get(power, ring.zero) * den - num * d_coeffs.get(power, ring.zero)
        for power in (1, 2)
    }
    if c[2].is_zero:
        raise DegenerateSwitch(var)
    gen = ring.gens[index]
    return RationalFunction.from_fraction(field, -(c[1] + c[2] * gen), c[2])


def switch(invariant: BiquadraticInvariant, var: str, name: Optional[str] = None) -> RationalMap:
    """The involution replacing ``var`` by the other root of h = const."""
    if var not in invariant.variables:
        raise ValueError(f"'{var}' is not one of {invariant.variables}")
    root = _second_root(invariant.h, var)
    field = invariant.h.field
    components = tuple(root if w == var else field.gen(w) for w in invariant.variables)
    return RationalMap(name or f"switch_{var}", invariant.variables, components)


def build_qrt(invariant: BiquadraticInvariant, name: str = 'qrt') -> RationalMap:
    """Vertical switch after horizontal switch."""
    horizontal = switch(invariant, invariant.u, name='H')
    vertical = switch(invariant, invariant.v, name='V')
    logger.info(f"🔁 Building QRT map of {invariant.h} in ({invariant.u}, {invariant.v})")
    return compose(vertical, horizontal, name=name)


def qrt_order(m: RationalMap, invariant: BiquadraticInvariant,
              certifier: Optional[Certifier] = None) -> CheckOutcome:
    """Whether m is the QRT map with the horizontal or the vertical switch first."""
    horizontal = switch(invariant, invariant.u, name='H')
    vertical = switch(invariant, invariant.v, name='V')
    if check_equal_maps(m, compose(vertical, horizontal), certifier).positive:
        return CheckOutcome('horizontal-first', True, detail=f"{m.name} = V∘H")
    outcome = check_equal_maps(m, compose(horizontal, vertical), certifier)
    if outcome.positive:
        return CheckOutcome('vertical-first', True, outcome.evidence, detail=f"{m.name} = H∘V")
    return CheckOutcome('neither', False, outcome.evidence, detail=f"{m.name} is not a QRT map of this invariant")
