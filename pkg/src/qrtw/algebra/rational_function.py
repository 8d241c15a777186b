"""
Rational functions over QQ with factored denominators.

A RationalFunction is ``num / (f1**e1 * ... * fm**em)``. The numerator is a
sparse sympy ``PolyElement`` carrying the rational scalar; every denominator
factor is a primitive integer polynomial with positive leading coefficient.
Monomial content is split into one factor per variable. Common denominators
take the maximal exponent per factor and no polynomial gcd is ever computed:
a factor is cancelled only when it divides the numerator exactly.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Set, Tuple, Union

from sympy.polys.domains import QQ

from ..utils.error_handler import DenominatorVanishes, IdenticallySingular

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
FactorKey = FrozenSet
Factors = Dict[FactorKey, Tuple[Any, int]]


def to_fraction(coeff) -> Fraction:
    """Convert a QQ domain element to a Fraction."""
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def to_domain(value: Scalar):
    """Convert an int or Fraction to a QQ domain element."""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction))


def _factor_key(poly) -> FactorKey:
    return frozenset(poly.items())


def _monomial_content(ring, poly) -> Tuple[Tuple[int, ...], Any]:
    """Largest monomial dividing every term, and the polynomial divided by it."""
    monom = tuple(min(exps) for exps in zip(*poly.itermonoms()))
    if not any(monom):
        return monom, poly
    shifted = {
        tuple(e - m for e, m in zip(term, monom)): coeff
        for term, coeff in poly.iterterms()
    }
    return monom, ring.from_dict(shifted)


def _split(ring, poly) -> Tuple[Any, List[Tuple[Any, int]]]:
    """Split a nonzero polynomial into scalar content and normalized factors."""
    monom, rest = _monomial_content(ring, poly)
    content, primitive = rest.primitive()
    if primitive.LC < 0:
        primitive, content = -primitive, -content
    parts = [(ring.gens[i], e) for i, e in enumerate(monom) if e]
    if not primitive.is_ground:
        parts.append((primitive, 1))
    return content, parts


def _merge(target: Factors, parts, scale: int = 1) -> Factors:
    for poly, exp in parts:
        key = _factor_key(poly)
        if key in target:
            target[key] = (target[key][0], target[key][1] + exp * scale)
        else:
            target[key] = (poly, exp * scale)
    return target


def _expand(ring, factors: Factors):
    result = ring.one
    for poly, exp in factors.values():
        result = result * poly ** exp
    return result


def _may_divide(num, factor) -> bool:
    return all(fd <= nd for fd, nd in zip(factor.degrees(), num.degrees()))


def _cancel(num, factors: Factors) -> Tuple[Any, Factors]:
    if num.is_zero:
        return num, {}
    kept: Factors = {}
    for key, (poly, exp) in factors.items():
        while exp > 0 and _may_divide(num, poly):
            quotient, remainder = num.div(poly)
            if not remainder.is_zero:
                break
            num = quotient
            exp -= 1
        if exp > 0:
            kept[key] = (poly, exp)
    return num, kept


def evaluate_poly(poly, values: List[Any], symbols: Tuple[str, ...], exact: bool = True):
    """Evaluate a polynomial at per-generator values (None marks a missing value)."""
    total = Fraction(0) if exact else 0.0
    for monom, coeff in poly.iterterms():
        term = to_fraction(coeff)
        if not exact:
            term = float(term)
        for i, e in enumerate(monom):
            if e:
                value = values[i]
                if value is None:
                    raise KeyError(f"no value supplied for symbol '{symbols[i]}'")
                term *= value ** e
        total += term
    return total


class RationalFunction:
    """An element of QQ(symbols) attached to a FunctionField."""

    __slots__ = ('field', 'num', 'factors', '_den', '_used')

    def __init__(self, field, num, factors: Optional[Factors] = None, normalized: bool = False):
        factors = {} if factors is None else factors
        if not normalized:
            factors = {k: (p, e) for k, (p, e) in factors.items() if e > 0}
            num, factors = _cancel(num, factors)
        self.field = field
        self.num = num
        self.factors = factors
        self._den = None
        self._used: Optional[Set[int]] = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_fraction(cls, field, num, den) -> 'RationalFunction':
        """Build num/den from two polynomials of the field's ring."""
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        content, parts = _split(field.ring, den)
        return cls(field, num.quo_ground(content), _merge({}, parts))

    def _coerce(self, other) -> 'RationalFunction':
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise ValueError(f"rational functions from different fields: {self.field} vs {other.field}")
            return other
        if is_scalar(other):
            return self.field.constant(other)
        return NotImplemented

    # -- accessors ---------------------------------------------------------

    @property
    def den(self):
        """The expanded denominator polynomial."""
        if self._den is None:
            self._den = _expand(self.field.ring, self.factors)
        return self._den

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return not self.factors and self.num.is_ground

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return to_fraction(self.num.LC) if not self.num.is_zero else Fraction(0)

    def used_indices(self) -> Set[int]:
        """Indices of the generators this function actually depends on."""
        if self._used is None:
            used: Set[int] = set()
            for poly in [self.num] + [p for p, _ in self.factors.values()]:
                for monom in poly.itermonoms():
                    used.update(i for i, e in enumerate(monom) if e)
            self._used = used
        return self._used

    def used_symbols(self) -> List[str]:
        return [self.field.symbols[i] for i in sorted(self.used_indices())]

    def is_generator(self, index: int) -> bool:
        if self.factors or len(self.num) != 1:
            return False
        (monom, coeff), = self.num.items()
        return coeff == 1 and sum(monom) == 1 and monom[index] == 1

    def generator_name(self) -> Optional[str]:
        """The symbol name when this function is a bare generator."""
        for i in self.used_indices():
            if self.is_generator(i):
                return self.field.symbols[i]
        return None

    def degree_in(self, name: str) -> Tuple[int, int]:
        """Degrees of numerator and denominator in one symbol."""
        i = self.field.index(name)
        num_degree = max((m[i] for m in self.num.itermonoms()), default=0)
        den_degree = sum(max((m[i] for m in p.itermonoms()), default=0) * e for p, e in self.factors.values())
        return num_degree, den_degree

    def total_degrees(self) -> Tuple[int, int]:
        """Total degrees of the numerator and of the expanded denominator."""
        def total(poly) -> int:
            return max((sum(m) for m in poly.itermonoms()), default=0)
        return total(self.num), sum(total(p) * e for p, e in self.factors.values())

    def cleared_degree(self) -> int:
        """Total degree of numerator plus total degree of denominator."""
        return sum(self.total_degrees())

    def side_degree(self) -> int:
        """Largest of the numerator and denominator total degrees."""
        return max(self.total_degrees())

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> 'RationalFunction':
        return RationalFunction(self.field, -self.num, dict(self.factors), normalized=True)

    def __pos__(self) -> 'RationalFunction':
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        common: Factors = {}
        for key in set(self.factors) | set(other.factors):
            poly = (self.factors.get(key) or other.factors.get(key))[0]
            exp = max(self.factors.get(key, (None, 0))[1], other.factors.get(key, (None, 0))[1])
            common[key] = (poly, exp)
        num = self._raised(common) + other._raised(common)
        return RationalFunction(self.field, num, common)

    __radd__ = __add__

    def _raised(self, common: Factors):
        num = self.num
        for key, (poly, exp) in common.items():
            missing = exp - self.factors.get(key, (None, 0))[1]
            if missing:
                num = num * poly ** missing
        return num

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.field.zero
        factors = _merge(dict(self.factors), other.factors.values())
        return RationalFunction(self.field, self.num * other.num, factors)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        content, parts = _split(self.field.ring, other.num)
        num = (self.num * other.den).quo_ground(content)
        factors = _merge(dict(self.factors), parts)
        return RationalFunction(self.field, num, factors)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> 'RationalFunction':
        if not isinstance(exponent, int):
            raise TypeError("only integer exponents are supported")
        if exponent < 0:
            return self.field.one / self ** (-exponent)
        if exponent == 0:
            return self.field.one
        factors = {k: (p, e * exponent) for k, (p, e) in self.factors.items()}
        return RationalFunction(self.field, self.num ** exponent, factors, normalized=True)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point: Mapping[str, Any], exact: bool = True):
        """Value at a point of scalars; raises DenominatorVanishes on the pole locus."""
        values = self.field.point_values(point, exact=exact)
        den = Fraction(1) if exact else 1.0
        for poly, exp in self.factors.values():
            value = evaluate_poly(poly, values, self.field.symbols, exact)
            if value == 0:
                raise DenominatorVanishes(str(poly.as_expr()), dict(point))
            den *= value ** exp
        return evaluate_poly(self.num, values, self.field.symbols, exact) / den

    def substitute(self, values: Mapping[str, Any]) -> 'RationalFunction':
        """Replace symbols by rational functions or scalars of the same field."""
        used = self.used_indices()
        subs: Dict[int, RationalFunction] = {}
        for name, value in values.items():
            i = self.field.index(name)
            if i not in used:
                continue
            image = self._coerce(value)
            if image is NotImplemented:
                raise TypeError(f"cannot substitute {type(value).__name__} for '{name}'")
            if not image.is_generator(i):
                subs[i] = image
        if not subs:
            return self
        result = substitute_poly(self.field, self.num, subs)
        for poly, exp in self.factors.values():
            image = substitute_poly(self.field, poly, subs)
            if image.is_zero:
                raise IdenticallySingular(str(poly.as_expr()))
            result = result / image ** exp
        return result

    def at(self, point: Mapping[str, Any]):
        """Evaluate when every used symbol maps to a scalar, else substitute."""
        names = self.used_symbols()
        values = {name: point[name] for name in names if name in point}
        if len(values) == len(names) and all(is_scalar(v) for v in values.values()):
            return self.evaluate(values)
        if all(isinstance(v, float) for v in values.values()) and len(values) == len(names):
            return self.evaluate(values, exact=False)
        return self.substitute(values)

    def diff(self, name: str) -> 'RationalFunction':
        """Partial derivative by the quotient rule over the denominator factors."""
        gen = self.field.ring.gens[self.field.index(name)]
        result = RationalFunction(self.field, self.num.diff(gen), dict(self.factors))
        for key, (poly, exp) in self.factors.items():
            dpoly = poly.diff(gen)
            if dpoly.is_zero:
                continue
            factors = dict(self.factors)
            factors[key] = (poly, exp + 1)
            result = result - RationalFunction(self.field, self.num * dpoly * exp, factors)
        return result

    # -- printing ----------------------------------------------------------

    def as_expr(self):
        return self.num.as_expr() / self.den.as_expr()

    def __str__(self) -> str:
        return str(self.as_expr())

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


def _powers(poly, top: int) -> List[Any]:
    powers = [poly.ring.one]
    for _ in range(top):
        powers.append(powers[-1] * poly)
    return powers


def substitute_poly(field, poly, subs: Dict[int, RationalFunction]) -> RationalFunction:
    """Substitute rational functions into a polynomial over one common denominator."""
    ring = field.ring
    indices = sorted(subs)
    degrees = {i: 0 for i in indices}
    groups: Dict[Tuple[int, ...], Dict[Tuple[int, ...], Any]] = {}
    for monom, coeff in poly.iterterms():
        key = tuple(monom[i] for i in indices)
        for i, e in zip(indices, key):
            degrees[i] = max(degrees[i], e)
        rest = list(monom)
        for i in indices:
            rest[i] = 0
        groups.setdefault(key, {})[tuple(rest)] = coeff

    num_powers = {i: _powers(subs[i].num, degrees[i]) for i in indices}
    den_powers = {i: _powers(subs[i].den, degrees[i]) for i in indices}
    total = ring.zero
    for key, terms in groups.items():
        part = ring.from_dict(terms)
        for i, e in zip(indices, key):
            part = part * num_powers[i][e] * den_powers[i][degrees[i] - e]
        total += part

    factors: Factors = {}
    for i in indices:
        _merge(factors, subs[i].factors.values(), scale=degrees[i])
    return RationalFunction(field, total, factors)
