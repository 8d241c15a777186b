"""
Rational Maps

A RationalMap sends a point given by ``variables`` to new values of
``targets``. Birational maps of a space to itself keep targets equal to
variables; projections to a lower-dimensional space name their own targets.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

from ..algebra import FunctionField, RationalFunction
from ..utils.error_handler import DenominatorVanishes, IdenticallySingular

logger = logging.getLogger(__name__)

Point = Dict[str, Any]


@dataclass(frozen=True)
class RationalMap:
    """A tuple of rational functions, one per target coordinate."""
    name: str
    variables: Tuple[str, ...]
    components: Tuple[RationalFunction, ...]
    targets: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'variables', tuple(self.variables))
        object.__setattr__(self, 'components', tuple(self.components))
        targets = self.variables if self.targets is None else tuple(self.targets)
        object.__setattr__(self, 'targets', targets)
        if not self.components:
            raise ValueError(f"map {self.name} has no components")
        if len(self.components) != len(self.targets):
            raise ValueError(
                f"map {self.name} has {len(self.components)} components for {len(self.targets)} targets"
            )

    @property
    def field(self) -> FunctionField:
        return self.components[0].field

    @property
    def is_endomorphism(self) -> bool:
        return self.targets == self.variables

    @classmethod
    def identity(cls, field: FunctionField, variables: Sequence[str], name: str = 'id') -> 'RationalMap':
        return cls(name, tuple(variables), tuple(field.gen(v) for v in variables))

    def image(self, point: Mapping[str, Any]) -> Tuple[Any, ...]:
        """Component values at a point (scalars or rational functions)."""
        values = []
        for target, component in zip(self.targets, self.components):
            try:
                values.append(component.at(point))
            except DenominatorVanishes as exc:
                exc.component = f"{self.name}[{target}]"
                raise
        return tuple(values)

    def apply(self, point: Mapping[str, Any]) -> Point:
        """The point with the target coordinates replaced by the image."""
        moved = dict(point)
        moved.update(zip(self.targets, self.image(point)))
        return moved

    __call__ = apply

    def substitute(self, values: Mapping[str, Any], name: Optional[str] = None) -> 'RationalMap':
        """Specialize parameters (or any symbols) in every component."""
        return RationalMap(
            name or self.name, self.variables,
            tuple(c.substitute(values) for c in self.components), self.targets
        )

    def __str__(self) -> str:
        body = ', '.join(f"{t} -> {c}" for t, c in zip(self.targets, self.components))
        return f"{self.name}: ({body})"


def compose(outer: RationalMap, inner: RationalMap, name: Optional[str] = None) -> RationalMap:
    """outer after inner, as a single rational map."""
    if tuple(outer.variables) != tuple(inner.targets):
        raise ValueError(
            f"cannot compose {outer.name} after {inner.name}: "
            f"{outer.variables} does not match {inner.targets}"
        )
    values = dict(zip(inner.targets, inner.components))
    components = []
    for target, component in zip(outer.targets, outer.components):
        try:
            components.append(component.substitute(values))
        except IdenticallySingular as exc:
            raise IdenticallySingular(f"{outer.name}[{target}] after {inner.name}: {exc.component}") from exc
    logger.debug(f"🔗 Composed {outer.name} after {inner.name}")
    return RationalMap(name or f"{outer.name}∘{inner.name}", inner.variables, tuple(components), outer.targets)
