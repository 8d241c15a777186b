"""
The function field QQ(x1, ..., xn, a, b, ...) shared by one example.

Phase variables come first and parameters last; generator order is the
sympy ring order and fixes how points are read.
"""

from fractions import Fraction
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from .rational_function import RationalFunction, is_scalar, to_domain


class FunctionField:
    """Rational functions over QQ in a fixed, ordered list of symbols."""

    def __init__(self, variables: Sequence[str], parameters: Sequence[str] = ()):
        self.variables: Tuple[str, ...] = tuple(variables)
        self.parameters: Tuple[str, ...] = tuple(parameters)
        self.symbols: Tuple[str, ...] = self.variables + self.parameters
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbols in {self.symbols}")
        if not self.symbols:
            raise ValueError("a function field needs at least one symbol")
        self.ring = PolyRing(self.symbols, QQ, grlex)
        self._index = {name: i for i, name in enumerate(self.symbols)}
        self.zero = RationalFunction(self, self.ring.zero, normalized=True)
        self.one = RationalFunction(self, self.ring.one, normalized=True)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown symbol '{name}' (known: {', '.join(self.symbols)})") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def gen(self, name: str) -> RationalFunction:
        return RationalFunction(self, self.ring.gens[self.index(name)], normalized=True)

    def constant(self, value) -> RationalFunction:
        return RationalFunction(self, self.ring.ground_new(to_domain(value)), normalized=True)

    def from_poly(self, poly) -> RationalFunction:
        return RationalFunction(self, poly, normalized=True)

    def coerce(self, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            return value
        if is_scalar(value):
            return self.constant(value)
        raise TypeError(f"cannot convert {type(value).__name__} to a rational function")

    def generic_point(self) -> Dict[str, RationalFunction]:
        """Every symbol mapped to its own generator."""
        return {name: self.gen(name) for name in self.symbols}

    def point_values(self, point: Mapping[str, Any], exact: bool = True) -> List[Any]:
        """Per-generator values of a point, None where the point is silent."""
        values: List[Any] = [None] * len(self.symbols)
        for name, value in point.items():
            i = self._index.get(name)
            if i is None:
                continue
            values[i] = Fraction(value) if exact else float(value)
        return values

    def __eq__(self, other) -> bool:
        return isinstance(other, FunctionField) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return f"FunctionField({', '.join(self.variables)}; {', '.join(self.parameters)})"
