"""
Registry Data Types

An ExampleBundle holds one catalogue entry with every formula turned into
rational functions, maps, vector fields and forms over a single function
field. Bundles are built once by the loader and not modified afterwards.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..algebra import CheckOutcome, FunctionField, RationalFunction
from ..calculus import SymplecticDensity, VectorField, WeightedVolumeForm
from ..maps import RationalMap
from ..utils.rationals import format_rational, parse_rational

SYMBOLIC = 'symbolic'

Level = Union[Fraction, str]


@dataclass
class ParameterAssignment:
    """Values for a, b and the level parameters; anything not given stays symbolic."""
    values: Dict[str, Level] = field(default_factory=dict)
    seed: Optional[int] = None

    def __post_init__(self):
        self.values = {
            name: SYMBOLIC if value == SYMBOLIC else Fraction(value)
            for name, value in self.values.items()
        }

    @classmethod
    def symbolic(cls) -> 'ParameterAssignment':
        return cls()

    @classmethod
    def parse(cls, pairs: Sequence[str], seed: Optional[int] = None) -> 'ParameterAssignment':
        """From ``name=p/q`` or ``name=symbolic`` strings."""
        values: Dict[str, Level] = {}
        for pair in pairs:
            name, sep, text = pair.partition('=')
            if not sep or not name.strip():
                raise ValueError(f"expected name=value, got {pair!r}")
            text = text.strip()
            values[name.strip()] = SYMBOLIC if text == SYMBOLIC else parse_rational(text)
        return cls(values, seed)

    def numeric(self) -> Dict[str, Fraction]:
        return {name: value for name, value in self.values.items() if value != SYMBOLIC}

    def is_symbolic(self, name: str) -> bool:
        return self.values.get(name, SYMBOLIC) == SYMBOLIC

    def describe(self) -> Dict[str, str]:
        return {
            name: value if value == SYMBOLIC else format_rational(value)
            for name, value in sorted(self.values.items())
        }


@dataclass(frozen=True)
class Identity:
    """``lhs = rhs`` between two rational functions, as written in the catalogue."""
    text: str
    lhs: RationalFunction
    rhs: RationalFunction


@dataclass(frozen=True)
class Expectation:
    """The status a check should report, and whether the source states it."""
    status: str
    asserted: bool = True


@dataclass
class Reduction:
    """Projection of a branch to the reduced plane and the map it induces there."""
    projection: RationalMap
    map_name: str
    levels: Dict[str, RationalFunction]
    level_names: Dict[str, str]
    lift: str


@dataclass
class Contraction:
    """One step of the contraction chain: field _| previous form == form."""
    field: str
    form: WeightedVolumeForm


@dataclass
class CoordinateChart:
    """Intermediate coordinates in which the symmetry field is straightened out."""
    projection: RationalMap
    jacobian: RationalFunction
    volume: WeightedVolumeForm
    fields: Dict[str, VectorField]
    functions: Dict[str, RationalFunction] = field(default_factory=dict)
    map: Optional[RationalMap] = None
    fiber: Optional[Tuple[str, int]] = None
    contractions: List[Contraction] = field(default_factory=list)
    differential: Optional[WeightedVolumeForm] = None

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(self.projection.targets)


@dataclass
class Branch:
    """One ambient map with its symmetry field and everything attached to it."""
    name: str
    map: RationalMap
    field: VectorField
    invariants: Dict[str, RationalFunction]
    gammas: Dict[str, RationalFunction]
    constraints: List[Identity]
    involutions: Dict[str, RationalMap]
    density_name: str
    density: RationalFunction
    signs: Dict[str, Expectation] = field(default_factory=dict)
    extra_fields: Dict[str, VectorField] = field(default_factory=dict)
    factorization: Optional[Tuple[str, str]] = None
    jacobian_claim: Optional[RationalFunction] = None
    reduction: Optional[Reduction] = None
    chart: Optional[CoordinateChart] = None

    @property
    def all_fields(self) -> Dict[str, VectorField]:
        return {self.field.name: self.field, **self.extra_fields}


@dataclass
class ReducedMapEntry:
    map: RationalMap
    symplectic: Expectation
    qrt: Expectation


@dataclass
class ReducedSystem:
    """Planar data on a level set: reduced maps, their invariant and symplectic density."""
    variables: Tuple[str, str]
    invariant_name: str
    invariant: RationalFunction
    omega: SymplecticDensity
    maps: Dict[str, ReducedMapEntry]
    commuting: List[Tuple[str, str]] = field(default_factory=list)


@dataclass
class TwoFormData:
    """A constant-free 2-form on the ambient space with its expected behaviour."""
    name: str
    form: WeightedVolumeForm
    maps: Dict[str, Expectation]
    pullback_projection: Optional[RationalMap] = None
    pullback_form: Optional[WeightedVolumeForm] = None


@dataclass
class SymmetryTarget:
    invariants: List[str]
    free: List[str]
    fields: List[str]


@dataclass
class ExampleBundle:
    """A fully parsed catalogue example."""
    name: str
    title: str
    summary: str
    ambient_dim: int
    field: FunctionField
    variables: Tuple[str, ...]
    params: ParameterAssignment
    definitions: Dict[str, object]
    branches: List[Branch]
    reduced: ReducedSystem
    level_names: Tuple[str, ...] = ()
    identities: List[Identity] = field(default_factory=list)
    brackets: List[Tuple[str, str]] = field(default_factory=list)
    commuting: List[Tuple[str, str]] = field(default_factory=list)
    two_forms: List[TwoFormData] = field(default_factory=list)
    symmetry: List[SymmetryTarget] = field(default_factory=list)
    load_checks: Dict[str, CheckOutcome] = field(default_factory=dict)

    def branch(self, map_name: str) -> Branch:
        for branch in self.branches:
            if branch.name == map_name:
                return branch
        raise KeyError(f"{self.name} has no branch {map_name!r}")

    @property
    def maps(self) -> Dict[str, RationalMap]:
        """Every ambient map: branch maps first, then their involutions."""
        found: Dict[str, RationalMap] = {}
        for branch in self.branches:
            found[branch.name] = branch.map
        for branch in self.branches:
            found.update(branch.involutions)
        return found

    @property
    def invariants(self) -> Dict[str, RationalFunction]:
        found: Dict[str, RationalFunction] = {}
        for branch in self.branches:
            found.update(branch.invariants)
        return found

    def function(self, name: str) -> RationalFunction:
        value = self.definitions[name]
        if not isinstance(value, RationalFunction):
            raise TypeError(f"{name} is a comma list, not a function")
        return value
