"""
Verification Suite

Runs every check a catalogue example supports, in a fixed order: gamma
constraints, ambient invariance, volume and pushforward signs, divergence,
coordinate charts, commuting squares, fiber structure, the reduced plane
(invariance, symplectic densities, QRT order, commutativity), 2-forms and
finally symmetry bases. Each check gets its mode from the ModePolicy; the
result is positive when its status equals the expected one, so negative
expectations such as "neither" are checked like any other.
"""

import logging
import time
from itertools import combinations
from typing import Callable, Dict, Optional, Union

from config.workbench import CheckMode, ModePolicy
from ..algebra import CheckOutcome, Certifier
from ..calculus import basis_combination, contract, symmetry_basis, symplectic_check_2d
from ..maps import (
    check_annihilates, check_bracket_vanishes, check_commutativity, check_commuting_square,
    check_divergence_free, check_factorization, check_fiber_structure, check_field_transport,
    check_fields_equal, check_forms_equal, check_function_transport, check_gamma_constraint,
    check_invariant, check_involution, check_jacobian_determinant, check_lift,
    check_projection_jacobian, check_pushforward_sign, check_two_form_pullback, check_volume_sign,
    commutator_degree, two_form_preserved
)
from ..qrt import build_qrt, qrt_order, validate_biquadratic
from ..registry import ExampleBundle, Expectation, ParameterAssignment, instantiate
from ..utils.error_handler import ErrorHandler, QrtwError
from .report import CheckReport, CheckResult

logger = logging.getLogger(__name__)

SIGNS = {'plus': 1, 'minus': -1}

Run = Callable[[Certifier], CheckOutcome]


class SuiteRunner:
    """Collects CheckResults for one bundle under one mode policy."""

    def __init__(self, bundle: ExampleBundle, policy: Optional[ModePolicy] = None, timings: bool = False):
        self.bundle = bundle
        self.policy = policy or ModePolicy.default()
        self.timings = timings
        self.errors = ErrorHandler()
        self.results: Dict[str, CheckResult] = {}
        self._certifiers: Dict[CheckMode, Certifier] = {}

    def certifier(self, mode: CheckMode) -> Certifier:
        if mode not in self._certifiers:
            self._certifiers[mode] = Certifier(
                self.bundle.field, mode, self.policy.trials, self.policy.seed, self.policy.sampling
            )
        return self._certifiers[mode]

    def record(self, kind: str, target: str, expected: Union[str, Expectation], run: Run,
               dim: Optional[int] = None, degree: Optional[int] = None) -> CheckResult:
        """Run one check unless its id was already recorded; ``degree`` feeds the policy's exact cap."""
        check_id = f"{kind}:{target}"
        if check_id in self.results:
            return self.results[check_id]
        if isinstance(expected, str):
            expected = Expectation(expected)
        mode = self.policy.mode_for(check_id, dim or self.bundle.ambient_dim, degree)
        start = time.perf_counter()
        try:
            outcome = run(self.certifier(mode))
        except (QrtwError, ValueError, KeyError) as exc:
            self.errors.record(exc, check_id=check_id)
            outcome = CheckOutcome('error', False, detail=str(exc))
        elapsed = time.perf_counter() - start
        result = CheckResult.from_outcome(
            check_id, kind, target, mode.value, expected.status, expected.asserted, outcome,
            wall_time=round(elapsed, 6) if self.timings else None,
        )
        icon = "✅" if result.positive else "❌"
        logger.debug(f"{icon} {check_id}: {result.status} (expected {result.expected}, {result.mode})")
        if not result.positive:
            logger.warning(f"❌ {self.bundle.name} {check_id}: {result.status}, expected {result.expected}")
        self.results[check_id] = result
        return result

    # -- ambient space -------------------------------------------------------------

    def gamma_constraints(self):
        for branch in self.bundle.branches:
            for identity in branch.constraints:
                self.record('gamma', f"{branch.name}:{identity.text}", 'confirmed',
                            lambda c, i=identity: check_gamma_constraint(i.lhs, i.rhs, c))

    def invariance(self):
        for branch in self.bundle.branches:
            maps = {branch.name: branch.map, **branch.involutions}
            for map_name, m in maps.items():
                for h_name, h in branch.invariants.items():
                    self.record('invariant', f"{map_name}:{h_name}", 'invariant',
                                lambda c, m=m, h=h: check_invariant(m, h, c))
            for name, involution in branch.involutions.items():
                self.record('involution', name, 'yes', lambda c, m=involution: check_involution(m, c))
            if branch.factorization:
                outer, inner = branch.factorization
                self.record('factorization', f"{branch.name}={outer}∘{inner}", 'yes',
                            lambda c, b=branch, o=outer, i=inner:
                            check_factorization(b.map, self.bundle.maps[o], self.bundle.maps[i], c))

    def volume_signs(self):
        for branch in self.bundle.branches:
            expectation = branch.signs.get('volume')
            if expectation is not None:
                self.record('volume', f"{branch.name}:{branch.density_name}", expectation,
                            lambda c, b=branch, e=expectation:
                            check_volume_sign(b.map, b.density, c, SIGNS.get(e.status)))
            if branch.jacobian_claim is not None:
                self.record('jacobian', branch.name, 'confirmed',
                            lambda c, b=branch: check_jacobian_determinant(b.map, b.jacobian_claim, c))

    def pushforward_signs(self):
        for branch in self.bundle.branches:
            for field_name, X in branch.all_fields.items():
                expectation = branch.signs.get(field_name)
                if expectation is None:
                    continue
                self.record('pushforward', f"{branch.name}:{field_name}", expectation,
                            lambda c, b=branch, X=X, e=expectation:
                            check_pushforward_sign(b.map, X, c, SIGNS.get(e.status)))

    def divergence(self):
        for branch in self.bundle.branches:
            for field_name, X in branch.all_fields.items():
                self.record('divergence', f"{field_name}:{branch.density_name}", 'confirmed',
                            lambda c, X=X, b=branch: check_divergence_free(X, b.density, c))
            for g_name, g in branch.gammas.items():
                self.record('annihilates', f"{branch.field.name}:{g_name}", 'confirmed',
                            lambda c, X=branch.field, g=g: check_annihilates(X, g, c))
        fields = {}
        for branch in self.bundle.branches:
            fields.update(branch.all_fields)
        for first, second in self.bundle.brackets:
            self.record('bracket', f"{first},{second}", 'commutes',
                        lambda c, X=fields[first], Y=fields[second]: check_bracket_vanishes(X, Y, c))

    def charts(self):
        for branch in self.bundle.branches:
            chart = branch.chart
            if chart is None:
                continue
            pi = chart.projection
            self.record('chart-jacobian', pi.name, 'confirmed',
                        lambda c, pi=pi, j=chart.jacobian: check_projection_jacobian(pi, j, c))
            for ambient_name, X_new in chart.fields.items():
                X = branch.all_fields[ambient_name]
                self.record('chart-field', f"{pi.name}:{ambient_name}", 'confirmed',
                            lambda c, pi=pi, X=X, Y=X_new: check_field_transport(pi, X, Y, c))
            for h_name, h_new in chart.functions.items():
                h = self.bundle.function(h_name)
                self.record('chart-function', f"{pi.name}:{h_name}", 'confirmed',
                            lambda c, pi=pi, h=h, g=h_new: check_function_transport(pi, h, g, c))
            by_name = {X.name: X for X in chart.fields.values()}
            current = chart.volume
            for step in chart.contractions:
                contracted = contract(by_name[step.field], current) if step.field in by_name else None
                self.record('contraction', f"{pi.name}:{step.field}", 'confirmed',
                            lambda c, a=contracted, b=step.form, n=step.field: self._forms_equal(a, b, n, c))
                current = step.form
            if chart.differential is not None:
                self.record('differential', pi.name, 'confirmed',
                            lambda c, a=chart.differential, b=current: check_forms_equal(a, b, c))
        for identity in self.bundle.identities:
            self.record('identity', identity.text, 'confirmed',
                        lambda c, i=identity: check_gamma_constraint(i.lhs, i.rhs, c))

    @staticmethod
    def _forms_equal(contracted, stored, field_name: str, certifier: Certifier) -> CheckOutcome:
        if contracted is None:
            raise KeyError(f"no chart field named {field_name}")
        return check_forms_equal(contracted, stored, certifier)

    def commuting_squares(self):
        reduced_maps = self.bundle.reduced.maps
        h_red = self.bundle.reduced.invariant
        for branch in self.bundle.branches:
            chart = branch.chart
            if chart is not None and chart.map is not None:
                self.record('square', f"{chart.projection.name}:{chart.map.name}", 'commutes',
                            lambda c, b=branch, ch=chart: check_commuting_square(b.map, ch.map, ch.projection, None, c))
            reduction = branch.reduction
            if reduction is None:
                continue
            psi = reduced_maps[reduction.map_name].map
            self.record('square', f"{reduction.projection.name}:{reduction.map_name}", 'commutes',
                        lambda c, b=branch, r=reduction, psi=psi:
                        check_commuting_square(b.map, psi, r.projection, r.levels, c))
            lift = self.bundle.function(reduction.lift)
            self.record('lift', f"{branch.name}:{self.bundle.reduced.invariant_name}", 'confirmed',
                        lambda c, r=reduction, h=lift: check_lift(h_red, r.projection, h, r.levels, c))

    def fibers(self):
        for branch in self.bundle.branches:
            chart = branch.chart
            if chart is None or chart.map is None or chart.fiber is None:
                continue
            variable, sign = chart.fiber
            self.record('fiber', f"{chart.map.name}:{variable}", 'confirmed',
                        lambda c, m=chart.map, v=variable, s=sign: check_fiber_structure(m, v, s, c))

    # -- reduced plane -------------------------------------------------------------

    def reduced_plane(self):
        system = self.bundle.reduced
        plane = len(system.variables)
        for name, entry in system.maps.items():
            self.record('reduced-invariant', f"{name}:{system.invariant_name}", 'invariant',
                        lambda c, m=entry.map: check_invariant(m, system.invariant, c), dim=plane)
        for name, entry in system.maps.items():
            self.record('symplectic', name, entry.symplectic,
                        lambda c, m=entry.map: symplectic_check_2d(m, system.omega, c), dim=plane)

    def qrt(self):
        system = self.bundle.reduced
        plane = len(system.variables)
        u, v = system.variables
        self.record('qrt-invariant', system.invariant_name, 'invariant',
                    lambda c: check_invariant(build_qrt(validate_biquadratic(system.invariant, u, v)),
                                              system.invariant, c), dim=plane)
        for name, entry in system.maps.items():
            self.record('qrt', name, entry.qrt,
                        lambda c, m=entry.map: qrt_order(m, validate_biquadratic(system.invariant, u, v), c),
                        dim=plane)
        for first, second in system.commuting:
            f, g = system.maps[first].map, system.maps[second].map
            self.record('commute', f"{first}/{second}", 'commutes',
                        lambda c, f=f, g=g: check_commutativity(f, g, c), dim=plane,
                        degree=commutator_degree(f, g))
        ambient = self.bundle.maps
        for first, second in self.bundle.commuting:
            f, g = ambient[first], ambient[second]
            self.record('commute', f"{first}/{second}", 'commutes',
                        lambda c, f=f, g=g: check_commutativity(f, g, c), degree=commutator_degree(f, g))

    def two_forms(self):
        maps = self.bundle.maps
        for data in self.bundle.two_forms:
            for map_name, expectation in data.maps.items():
                self.record('two-form', f"{data.name}:{map_name}", expectation,
                            lambda c, m=maps[map_name], w=data.form: two_form_preserved(m, w, c))
            if data.pullback_projection is not None:
                self.record('two-form-pullback', f"{data.pullback_projection.name}:{data.name}", 'confirmed',
                            lambda c, d=data: check_two_form_pullback(d.pullback_projection, d.pullback_form, d.form, c))

    # -- symmetry bases ------------------------------------------------------------

    def symmetry(self):
        for target in self.bundle.symmetry:
            label = ','.join(target.invariants)
            invariants = {h: self.bundle.function(h) for h in target.invariants}
            try:
                basis = symmetry_basis(list(invariants.values()), self.bundle.variables, target.free)
            except (QrtwError, ValueError) as exc:
                self.record('symmetry', label, 'confirmed', lambda c, e=exc: _raise(e))
                continue
            for sigma in basis:
                for h_name, h in invariants.items():
                    self.record('symmetry-annihilates', f"{label}:{sigma.name}:{h_name}", 'confirmed',
                                lambda c, s=sigma, h=h: check_annihilates(s, h, c))
            for first, second in combinations(basis, 2):
                self.record('symmetry-bracket', f"{label}:{first.name},{second.name}", 'commutes',
                            lambda c, X=first, Y=second: check_bracket_vanishes(X, Y, c))
            fields = {}
            for branch in self.bundle.branches:
                fields.update(branch.all_fields)
            for field_name in target.fields:
                X = fields[field_name]
                self.record('symmetry-recover', f"{label}:{field_name}", 'confirmed',
                            lambda c, X=X: check_fields_equal(basis_combination(X, basis, target.free), X, c))

    def run(self) -> CheckReport:
        logger.info(f"🚀 Verifying {self.bundle.name} (seed {self.policy.seed})")
        for stage in (
            self.gamma_constraints, self.invariance, self.volume_signs, self.pushforward_signs,
            self.divergence, self.charts, self.commuting_squares, self.fibers,
            self.reduced_plane, self.qrt, self.two_forms, self.symmetry,
        ):
            stage()
        report = CheckReport(
            example=self.bundle.name,
            seed=self.policy.seed,
            parameters=self.bundle.params.describe(),
            checks=list(self.results.values()),
        )
        icon = "✅" if report.passed else "❌"
        logger.info(f"{icon} {self.bundle.name}: {len(report.checks) - len(report.failures)}/"
                    f"{len(report.checks)} checks positive")
        return report


def _raise(error: Exception):
    raise error


def run_suite(example: Union[str, ExampleBundle], params: Optional[ParameterAssignment] = None,
              mode_policy: Optional[ModePolicy] = None, timings: bool = False) -> CheckReport:
    """Verify one example by name, or an already assembled bundle."""
    bundle = instantiate(example, params) if isinstance(example, str) else example
    return SuiteRunner(bundle, mode_policy, timings).run()
