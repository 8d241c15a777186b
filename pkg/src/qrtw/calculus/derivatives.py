"""
Derivatives, Jacobians and vector fields.

Everything here is symbolic: partial derivatives are RationalFunctions.
``*_at`` helpers evaluate the symbolic pieces at a point, which may be the
generic point (exact checks) or a sampled one (randomized checks).
"""

import logging
from dataclasses import dataclass
from typing import Any, List, Mapping, Sequence, Tuple

from ..algebra import FunctionField, RationalFunction, determinant

logger = logging.getLogger(__name__)


def partial(f: RationalFunction, var: str) -> RationalFunction:
    """df/dvar; var must be a symbol of f's field."""
    if var not in f.field:
        raise ValueError(f"'{var}' is not a symbol of {f.field}")
    return f.diff(var)


@dataclass(frozen=True)
class VectorField:
    """Components of a rational vector field in the given coordinates."""
    variables: Tuple[str, ...]
    components: Tuple[RationalFunction, ...]
    name: str = 'X'

    def __post_init__(self):
        object.__setattr__(self, 'variables', tuple(self.variables))
        object.__setattr__(self, 'components', tuple(self.components))
        if len(self.variables) != len(self.components):
            raise ValueError(
                f"vector field {self.name} has {len(self.components)} components for "
                f"{len(self.variables)} variables"
            )

    @property
    def field(self) -> FunctionField:
        return self.components[0].field

    def at(self, point: Mapping[str, Any]) -> Tuple[Any, ...]:
        return tuple(c.at(point) for c in self.components)

    def derivative_of(self, f: RationalFunction) -> RationalFunction:
        """X(f) = sum_i X_i df/dx_i."""
        total = f.field.zero
        for var, component in zip(self.variables, self.components):
            if not component.is_zero:
                total = total + component * partial(f, var)
        return total

    def scaled(self, factor: RationalFunction, name: str = None) -> 'VectorField':
        return VectorField(self.variables, tuple(c * factor for c in self.components), name or self.name)


@dataclass(frozen=True)
class JacobianMatrix:
    """Row i holds the partials of target i by each variable."""
    variables: Tuple[str, ...]
    targets: Tuple[str, ...]
    rows: Tuple[Tuple[RationalFunction, ...], ...]

    def at(self, point: Mapping[str, Any]) -> List[List[Any]]:
        return [[entry.at(point) for entry in row] for row in self.rows]

    def determinant(self):
        """Symbolic determinant (square matrices only)."""
        return determinant([list(row) for row in self.rows])

    def determinant_at(self, point: Mapping[str, Any]):
        return determinant(self.at(point))

    def apply_at(self, vector: Sequence[Any], point: Mapping[str, Any]) -> Tuple[Any, ...]:
        """J(point) . vector."""
        result = []
        for row in self.rows:
            total = 0
            for entry, value in zip(row, vector):
                if not entry.is_zero and value != 0:
                    total = total + entry.at(point) * value
            result.append(total)
        return tuple(result)


def jacobian(m) -> JacobianMatrix:
    """Symbolic Jacobian of a RationalMap by its own variables."""
    rows = tuple(tuple(partial(c, v) for v in m.variables) for c in m.components)
    return JacobianMatrix(tuple(m.variables), tuple(m.targets), rows)


def divergence(X: VectorField, sigma: RationalFunction = None) -> RationalFunction:
    """sum_i d(X_i/sigma)/dx_i, with sigma = 1 when omitted."""
    total = X.field.zero
    for var, component in zip(X.variables, X.components):
        if component.is_zero:
            continue
        total = total + partial(component if sigma is None else component / sigma, var)
    return total


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]^i = X(Y^i) - Y(X^i)."""
    if X.variables != Y.variables:
        raise ValueError("vector fields live on different coordinates")
    components = tuple(X.derivative_of(y) - Y.derivative_of(x) for x, y in zip(X.components, Y.components))
    return VectorField(X.variables, components, f"[{X.name},{Y.name}]")


def lie_bracket_at(X: VectorField, Y: VectorField, point: Mapping[str, Any]) -> Tuple[Any, ...]:
    """The bracket evaluated at a point from the two Jacobians."""
    x_values = X.at(point)
    y_values = Y.at(point)
    result = []
    for x_comp, y_comp in zip(X.components, Y.components):
        total = 0
        for var, xv, yv in zip(X.variables, x_values, y_values):
            if xv != 0 and not y_comp.is_zero:
                total = total + xv * partial(y_comp, var).at(point)
            if yv != 0 and not x_comp.is_zero:
                total = total - yv * partial(x_comp, var).at(point)
        result.append(total)
    return tuple(result)
