"""
Catalogue Loader

Reads catalogue.yml and the formula files next to it and assembles
ExampleBundles. Model parameters (a, b) are substituted at load; level
parameters (k, k1, k3) stay symbolic in a bundle because the commuting
squares tie them to ambient invariants, and are only specialised by
``reduced``.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import yaml

from ..algebra import Certifier, FormulaFile, FunctionField, RationalFunction, parse_expression
from ..calculus import SymplecticDensity, VectorField, WeightedVolumeForm, differential_wedge
from ..maps import RationalMap, check_gamma_constraint
from ..utils.error_handler import ExpressionSyntaxError, UnknownExample
from .bundle import (
    Branch, Contraction, CoordinateChart, ExampleBundle, Expectation, Identity, ParameterAssignment,
    Reduction, ReducedMapEntry, ReducedSystem, SymmetryTarget, TwoFormData
)

logger = logging.getLogger(__name__)

REGISTRY_DIR = Path(__file__).parent
CATALOGUE_PATH = REGISTRY_DIR / "catalogue.yml"
DATA_DIR = REGISTRY_DIR / "data"


@dataclass(frozen=True)
class ExampleSummary:
    name: str
    title: str
    summary: str
    ambient_dim: int


@lru_cache(maxsize=None)
def _read_catalogue(path: str) -> Dict[str, Any]:
    with open(path, 'r', encoding='utf-8') as handle:
        catalogue = yaml.safe_load(handle) or {}
    logger.debug(f"📁 Loaded {len(catalogue)} examples from {path}")
    return catalogue


def load_catalogue(path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    return _read_catalogue(str(path or CATALOGUE_PATH))


def catalogue_entry(name: str, catalogue: Optional[Mapping[str, Any]] = None) -> Dict[str, Any]:
    catalogue = catalogue if catalogue is not None else load_catalogue()
    if name not in catalogue:
        raise UnknownExample(name, list(catalogue))
    return catalogue[name]


def list_examples(ambient_dim: Optional[int] = None) -> List[ExampleSummary]:
    """Catalogue entries in file order, optionally filtered by dimension."""
    summaries = [
        ExampleSummary(name, entry['title'], entry['summary'], int(entry['ambient_dim']))
        for name, entry in load_catalogue().items()
    ]
    if ambient_dim is not None:
        summaries = [s for s in summaries if s.ambient_dim == ambient_dim]
    return summaries


def load_formulas(name: str) -> FormulaFile:
    entry = catalogue_entry(name)
    return FormulaFile.load(DATA_DIR / entry['formulas'])


# -- building blocks -------------------------------------------------------------


def _ordered_union(*groups: Sequence[str]) -> Tuple[str, ...]:
    seen: List[str] = []
    for group in groups:
        for name in group:
            if name not in seen:
                seen.append(name)
    return tuple(seen)


def _specialize(value, numeric: Mapping[str, Any]):
    if isinstance(value, tuple):
        return tuple(_specialize(item, numeric) for item in value)
    return value.substitute(numeric) if numeric else value


class _Builder:
    """Looks names up in the evaluated formula environment with useful errors."""

    def __init__(self, source: str, env: Dict[str, Any], field: FunctionField):
        self.source = source
        self.env = env
        self.field = field

    def _lookup(self, name: str):
        if name not in self.env:
            raise ExpressionSyntaxError(self.source, 0, f"catalogue refers to undefined name '{name}'")
        return self.env[name]

    def function(self, name: str) -> RationalFunction:
        value = self._lookup(name)
        if isinstance(value, tuple):
            raise ExpressionSyntaxError(self.source, 0, f"'{name}' is a comma list, expected a function")
        return value

    def components(self, name: str, size: int) -> Tuple[RationalFunction, ...]:
        value = self._lookup(name)
        if not isinstance(value, tuple) or len(value) != size:
            raise ExpressionSyntaxError(self.source, 0, f"'{name}' should be a list of {size} entries")
        return value

    def map(self, name: str, variables: Sequence[str], targets: Optional[Sequence[str]] = None) -> RationalMap:
        targets = tuple(targets) if targets is not None else tuple(variables)
        return RationalMap(name, tuple(variables), self.components(name, len(targets)), targets)

    def vector_field(self, name: str, variables: Sequence[str]) -> VectorField:
        return VectorField(tuple(variables), self.components(name, len(variables)), name)

    def identity(self, text: str) -> Identity:
        lhs, sep, rhs = text.partition('=')
        if not sep:
            raise ExpressionSyntaxError(self.source, 0, f"identity {text!r} has no '='")
        return Identity(text, self._expression(lhs), self._expression(rhs))

    def _expression(self, text: str) -> RationalFunction:
        value = parse_expression(text.strip(), self.field, self.env)
        if isinstance(value, tuple):
            raise ExpressionSyntaxError(self.source, 0, f"{text!r} is not a scalar expression")
        return value

    def form_from_terms(self, variables: Sequence[str], terms) -> WeightedVolumeForm:
        return WeightedVolumeForm.from_terms(
            variables, [(tuple(names), self.function(coefficient)) for names, coefficient in terms]
        )

    def two_form(self, name: str, variables: Sequence[str]) -> WeightedVolumeForm:
        """A 2-form written as a list of (first, second, coefficient) triples."""
        terms = []
        for triple in self._lookup(name):
            if not isinstance(triple, tuple) or len(triple) != 3:
                raise ExpressionSyntaxError(self.source, 0, f"'{name}' entries must be (d1, d2, coefficient)")
            first, second, coefficient = triple
            names = (first.generator_name(), second.generator_name())
            if None in names:
                raise ExpressionSyntaxError(self.source, 0, f"'{name}' must name coordinates in each entry")
            terms.append((names, coefficient))
        return WeightedVolumeForm.from_terms(variables, terms)


def _expectations(asserted: Optional[Mapping[str, str]], computed: Optional[Mapping[str, str]]) -> Dict[str, Expectation]:
    found = {key: Expectation(status, True) for key, status in (asserted or {}).items()}
    found.update({key: Expectation(status, False) for key, status in (computed or {}).items()})
    return found


def _chart(spec: Mapping[str, Any], build: _Builder, variables: Tuple[str, ...],
           ambient_fields: Mapping[str, VectorField]) -> CoordinateChart:
    chart_vars = tuple(spec['variables'])
    projection = build.map(spec['projection'], variables, chart_vars)
    fields = {}
    for ambient_name, chart_name in spec.get('fields', {}).items():
        if ambient_name not in ambient_fields:
            raise ExpressionSyntaxError(build.source, 0, f"no ambient field '{ambient_name}' for {chart_name}")
        fields[ambient_name] = build.vector_field(chart_name, chart_vars)
    chart = CoordinateChart(
        projection=projection,
        jacobian=build.function(spec['jacobian']),
        volume=WeightedVolumeForm.volume(chart_vars, build.function(spec['volume'])),
        fields=fields,
        functions={name: build.function(target) for name, target in spec.get('functions', {}).items()},
    )
    if spec.get('map'):
        chart.map = build.map(spec['map'], chart_vars)
    if spec.get('fiber'):
        chart.fiber = (spec['fiber']['variable'], int(spec['fiber']['sign']))
    for step in spec.get('contractions', []):
        chart.contractions.append(Contraction(step['field'], build.form_from_terms(chart_vars, step['terms'])))
    if spec.get('differential'):
        diff = spec['differential']
        chart.differential = differential_wedge(
            build.function(diff['function']), chart_vars, diff['rest'],
            scale=build.field.constant(diff.get('scale', 1))
        )
    return chart


def _branch(spec: Mapping[str, Any], build: _Builder, variables: Tuple[str, ...],
            reduced_vars: Tuple[str, ...]) -> Branch:
    name = spec['map']
    field = build.vector_field(spec['field'], variables)
    branch = Branch(
        name=name,
        map=build.map(name, variables),
        field=field,
        invariants={h: build.function(h) for h in spec['invariants']},
        gammas={g: build.function(g) for g in spec.get('gammas', [])},
        constraints=[build.identity(text) for text in spec.get('constraints', [])],
        involutions={i: build.map(i, variables) for i in spec.get('involutions', [])},
        density_name=spec.get('density', 'one'),
        density=build.function(spec.get('density', 'one')),
        signs=_expectations(spec.get('expected'), spec.get('computed')),
        extra_fields={f: build.vector_field(f, variables) for f in spec.get('extra_fields', [])},
    )
    if spec.get('factorization'):
        branch.factorization = (spec['factorization']['outer'], spec['factorization']['inner'])
    if spec.get('jacobian'):
        branch.jacobian_claim = build.function(spec['jacobian'])
    if spec.get('reduction'):
        red = spec['reduction']
        branch.reduction = Reduction(
            projection=build.map(red['projection'], variables, reduced_vars),
            map_name=red['map'],
            levels={level: build.function(h) for level, h in red['levels'].items()},
            level_names=dict(red['levels']),
            lift=red['lift'],
        )
    if spec.get('uv'):
        branch.chart = _chart(spec['uv'], build, variables, branch.all_fields)
    return branch


def _reduced(spec: Mapping[str, Any], build: _Builder) -> ReducedSystem:
    variables = tuple(spec['variables'])
    maps = {}
    for map_name, flags in spec['maps'].items():
        computed = set(flags.get('computed', []))
        maps[map_name] = ReducedMapEntry(
            map=build.map(map_name, variables),
            symplectic=Expectation(flags.get('symplectic', 'preserved'), 'symplectic' not in computed),
            qrt=Expectation(flags.get('qrt', 'neither'), 'qrt' not in computed),
        )
    sigma = build.function(spec['sigma'])
    return ReducedSystem(
        variables=variables,
        invariant_name=spec['invariant'],
        invariant=build.function(spec['invariant']),
        omega=SymplecticDensity(variables, sigma),
        maps=maps,
        commuting=[tuple(pair) for pair in spec.get('commuting', [])],
    )


def _two_forms(specs: Sequence[Mapping[str, Any]], build: _Builder) -> List[TwoFormData]:
    forms = []
    for spec in specs:
        variables = tuple(spec['variables'])
        data = TwoFormData(
            name=spec['form'],
            form=build.two_form(spec['form'], variables),
            maps=_expectations(spec.get('maps'), spec.get('computed')),
        )
        pullback = spec.get('pullback')
        if pullback:
            data.pullback_projection = build.map(pullback['projection'], variables, pullback['variables'])
            data.pullback_form = build.two_form(pullback['form'], pullback['variables'])
        forms.append(data)
    return forms


def _example_field(entry: Mapping[str, Any]) -> FunctionField:
    chart_vars = [b['uv']['variables'] for b in entry['branches'] if b.get('uv')]
    variables = _ordered_union(entry['variables'], *chart_vars, entry['reduced']['variables'])
    return FunctionField(variables, _ordered_union(entry.get('parameters', []), entry.get('levels', [])))


def build_bundle(name: str, entry: Mapping[str, Any], formulas: FormulaFile,
                 params: Optional[ParameterAssignment] = None) -> ExampleBundle:
    """Assemble a bundle from a catalogue entry and a parsed formula file."""
    params = params or ParameterAssignment.symbolic()
    field = _example_field(entry)
    undeclared = [s for s in formulas.free_symbols() if s not in field]
    if undeclared:
        raise ExpressionSyntaxError(formulas.source, 0, f"undeclared symbols: {', '.join(undeclared)}")

    model_params = set(entry.get('parameters', []))
    unknown = [p for p in params.values if p not in field]
    if unknown:
        raise ValueError(f"{name} has no parameter {', '.join(unknown)}")
    numeric = {p: v for p, v in params.numeric().items() if p in model_params}

    env = {key: _specialize(value, numeric) for key, value in formulas.evaluate(field).items()}
    build = _Builder(formulas.source, env, field)
    variables = tuple(entry['variables'])
    reduced_vars = tuple(entry['reduced']['variables'])

    bundle = ExampleBundle(
        name=name,
        title=entry['title'],
        summary=entry['summary'],
        ambient_dim=int(entry['ambient_dim']),
        field=field,
        variables=variables,
        params=params,
        definitions=env,
        branches=[_branch(spec, build, variables, reduced_vars) for spec in entry['branches']],
        reduced=_reduced(entry['reduced'], build),
        level_names=tuple(entry.get('levels', [])),
        identities=[build.identity(text) for text in entry.get('identities', [])],
        brackets=[tuple(pair) for pair in entry.get('brackets', [])],
        commuting=[tuple(pair) for pair in entry.get('commuting', [])],
        two_forms=_two_forms(entry.get('two_forms', []), build),
        symmetry=[SymmetryTarget(list(s['invariants']), list(s['free']), list(s['fields']))
                  for s in entry.get('symmetry', [])],
    )
    _self_check(bundle)
    return bundle


def _self_check(bundle: ExampleBundle) -> None:
    """Re-verify the gamma constraints exactly; failures are kept for the suite to report."""
    certifier = Certifier(bundle.field)
    for branch in bundle.branches:
        for identity in branch.constraints:
            outcome = check_gamma_constraint(identity.lhs, identity.rhs, certifier)
            bundle.load_checks[f"{branch.name}:{identity.text}"] = outcome
            if not outcome.positive:
                logger.warning(f"⚠️ {bundle.name}: constraint {identity.text} fails for {branch.name}")


def instantiate(name: str, params: Optional[ParameterAssignment] = None) -> ExampleBundle:
    """Parse one catalogue example; raises UnknownExample for unknown names."""
    entry = catalogue_entry(name)
    bundle = build_bundle(name, entry, FormulaFile.load(DATA_DIR / entry['formulas']), params)
    logger.info(f"📦 Loaded {name}: {len(bundle.branches)} branches, {len(bundle.reduced.maps)} reduced maps")
    return bundle


def reduced(name: str, level: Optional[ParameterAssignment] = None) -> ReducedSystem:
    """Planar maps, invariant and density with the given level values substituted."""
    level = level or ParameterAssignment.symbolic()
    system = instantiate(name, level).reduced
    numeric = {p: v for p, v in level.numeric().items() if p in system.invariant.field}
    if not numeric:
        return system
    sigma = system.omega.sigma.substitute(numeric)
    return ReducedSystem(
        variables=system.variables,
        invariant_name=system.invariant_name,
        invariant=system.invariant.substitute(numeric),
        omega=SymplecticDensity(system.variables, sigma),
        maps={
            map_name: ReducedMapEntry(entry.map.substitute(numeric), entry.symplectic, entry.qrt)
            for map_name, entry in system.maps.items()
        },
        commuting=list(system.commuting),
    )
