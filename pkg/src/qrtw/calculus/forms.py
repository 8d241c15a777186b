"""
Differential forms with rational coefficients.

A form is stored as a map from strictly increasing index tuples into
``variables`` to coefficients, so ``{(0, 2): c}`` is ``c dx0^dx2``.
Contraction puts the vector field into the first slot.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

from ..algebra import FunctionField, RationalFunction, is_zero
from .derivatives import JacobianMatrix, VectorField, jacobian, partial

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]


def _sorted_with_sign(indices: Sequence[int]) -> Tuple[Key, int]:
    """Sort indices, returning the permutation sign (0 on a repeat)."""
    items = list(indices)
    if len(set(items)) != len(items):
        return tuple(sorted(items)), 0
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    return tuple(items), sign


@dataclass
class WeightedVolumeForm:
    """A k-form sum_I c_I dx_I; the top-degree case is a weighted volume form."""
    variables: Tuple[str, ...]
    degree: int
    coefficients: Dict[Key, RationalFunction] = field(default_factory=dict)

    def __post_init__(self):
        self.variables = tuple(self.variables)
        for key in self.coefficients:
            if len(key) != self.degree or list(key) != sorted(set(key)):
                raise ValueError(f"bad index tuple {key} for a {self.degree}-form")

    @classmethod
    def top(cls, variables: Sequence[str], coefficient: RationalFunction) -> 'WeightedVolumeForm':
        """coefficient * dx1^...^dxn."""
        n = len(variables)
        return cls(tuple(variables), n, {tuple(range(n)): coefficient})

    @classmethod
    def volume(cls, variables: Sequence[str], density: RationalFunction) -> 'WeightedVolumeForm':
        """dx1^...^dxn / density."""
        return cls.top(variables, density.field.one / density)

    @classmethod
    def from_terms(cls, variables: Sequence[str],
                   terms: Iterable[Tuple[Sequence[str], RationalFunction]]) -> 'WeightedVolumeForm':
        """Build from (names, coefficient) pairs in any order, e.g. (('u2', 'v2'), 1/v2)."""
        variables = tuple(variables)
        coefficients: Dict[Key, RationalFunction] = {}
        degree = None
        for names, coefficient in terms:
            key, sign = _sorted_with_sign([variables.index(n) for n in names])
            if degree is None:
                degree = len(key)
            elif degree != len(key):
                raise ValueError("terms of mixed degree")
            if sign == 0:
                continue
            term = coefficient if sign == 1 else -coefficient
            coefficients[key] = coefficients[key] + term if key in coefficients else term
        return cls(variables, degree or 0, {k: c for k, c in coefficients.items() if not c.is_zero})

    def coefficient(self, names: Sequence[str]) -> Any:
        """The coefficient of dx_names, sign-adjusted for the order given."""
        key, sign = _sorted_with_sign([self.variables.index(n) for n in names])
        value = self.coefficients.get(key)
        if value is None or sign == 0:
            return 0
        return value if sign == 1 else -value

    def at(self, point: Mapping[str, Any], keys: Iterable[Key] = None) -> Tuple[Any, ...]:
        keys = sorted(self.coefficients) if keys is None else keys
        return tuple(self.coefficients[k].at(point) if k in self.coefficients else 0 for k in keys)

    def __neg__(self) -> 'WeightedVolumeForm':
        return WeightedVolumeForm(self.variables, self.degree, {k: -c for k, c in self.coefficients.items()})

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for key in sorted(self.coefficients):
            wedge = '^'.join(f"d{self.variables[i]}" for i in key)
            parts.append(f"({self.coefficients[key]}) {wedge}")
        return ' + '.join(parts)


def contract(X: VectorField, omega: WeightedVolumeForm) -> WeightedVolumeForm:
    """Interior product X _| omega, inserting X in the first slot."""
    if X.variables != omega.variables:
        raise ValueError("vector field and form use different coordinates")
    if omega.degree == 0:
        raise ValueError("cannot contract a 0-form")
    result: Dict[Key, RationalFunction] = {}
    for key, coefficient in omega.coefficients.items():
        for position, index in enumerate(key):
            component = X.components[index]
            if component.is_zero:
                continue
            rest = key[:position] + key[position + 1:]
            term = component * coefficient
            if position % 2:
                term = -term
            result[rest] = result[rest] + term if rest in result else term
    coefficients = {k: c for k, c in result.items() if not c.is_zero}
    return WeightedVolumeForm(omega.variables, omega.degree - 1, coefficients)


def differential_wedge(f: RationalFunction, variables: Sequence[str], rest: Sequence[str],
                       scale: RationalFunction = None) -> WeightedVolumeForm:
    """scale * df ^ dx_rest, with scale = 1 when omitted."""
    variables = tuple(variables)
    rest_indices = [variables.index(n) for n in rest]
    terms = []
    for j, var in enumerate(variables):
        if j in rest_indices:
            continue
        coefficient = partial(f, var)
        if coefficient.is_zero:
            continue
        if scale is not None:
            coefficient = coefficient * scale
        terms.append(((var,) + tuple(rest), coefficient))
    return WeightedVolumeForm.from_terms(variables, terms)


def forms_at(first: WeightedVolumeForm, second: WeightedVolumeForm,
             point: Mapping[str, Any]) -> Tuple[Tuple[Any, ...], Tuple[Any, ...]]:
    """Both forms' coefficients at a point over the union of their keys."""
    keys = sorted(set(first.coefficients) | set(second.coefficients))
    return first.at(point, keys), second.at(point, keys)


def pullback_two_form_at(omega: WeightedVolumeForm, m, point: Mapping[str, Any],
                         jac: JacobianMatrix = None) -> Tuple[Any, ...]:
    """Coefficients of m^* omega at a point, keyed by all pairs of m.variables."""
    if omega.degree != 2 or omega.variables != tuple(m.targets):
        raise ValueError("expected a 2-form on the target coordinates of the map")
    jac = jac or jacobian(m)
    values = jac.at(point)
    image = m.apply(point)
    weights = {key: c.at(image) for key, c in omega.coefficients.items()}
    n = len(m.variables)
    result: List[Any] = []
    for i, j in combinations(range(n), 2):
        total = 0
        for (a, b), weight in weights.items():
            minor = values[a][i] * values[b][j] - values[b][i] * values[a][j]
            if not is_zero(minor):
                total = total + weight * minor
        result.append(total)
    return tuple(result)


def pullback_two_form(omega: WeightedVolumeForm, m) -> WeightedVolumeForm:
    """m^* omega as a 2-form on m.variables."""
    ambient: FunctionField = m.field
    values = pullback_two_form_at(omega, m, ambient.generic_point())
    keys = list(combinations(range(len(m.variables)), 2))
    coefficients = {k: ambient.coerce(v) for k, v in zip(keys, values) if not is_zero(v)}
    return WeightedVolumeForm(tuple(m.variables), 2, coefficients)


def two_form_at(omega: WeightedVolumeForm, point: Mapping[str, Any]) -> Tuple[Any, ...]:
    """Coefficients of omega at a point, keyed by all pairs of its variables."""
    keys = list(combinations(range(len(omega.variables)), 2))
    return omega.at(point, keys)
