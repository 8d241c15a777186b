import json
import time

import pytest

from config import CheckMode, ModePolicy
from src.qrtw.algebra import FormulaFile
from src.qrtw.maps import commutator_degree
from src.qrtw.registry import ParameterAssignment, build_bundle, catalogue_entry, instantiate, load_formulas
from src.qrtw.registry.loader import DATA_DIR
from src.qrtw.verify import SuiteRunner, dump_json, run_suite


def _by_id(report):
    return {check.check_id: check for check in report.checks}


def test_invariance_stage_of_mcmillan(exact_policy):
    runner = SuiteRunner(instantiate('mcm4d'), exact_policy)
    runner.gamma_constraints()
    runner.invariance()
    assert runner.results['invariant:phi:h1'].status == 'invariant'
    assert runner.results['invariant:phi_hat:h2'].status == 'invariant'
    assert runner.results['involution:iota_xy'].status == 'yes'
    assert all(result.positive for result in runner.results.values())


def test_signs_of_mcmillan(exact_policy):
    runner = SuiteRunner(instantiate('mcm4d'), exact_policy)
    runner.volume_signs()
    runner.pushforward_signs()
    assert runner.results['volume:phi:one'].status == 'minus'
    assert runner.results['pushforward:phi:X'].status == 'minus'
    assert runner.results['pushforward:phi_hat:Xh'].status == 'minus'


def test_reduced_plane_of_yb38():
    bundle = instantiate('yb38')
    runner = SuiteRunner(bundle, ModePolicy.default(seed=1))
    runner.reduced_plane()
    runner.qrt()
    results = runner.results
    assert results['qrt:phi_red'].status == 'horizontal-first'
    assert results['qrt:phi_hat_red'].status == 'vertical-first'
    assert results['qrt:phi_bar_red'].status == 'neither'
    assert results['qrt:phi_bar_red'].positive
    assert not results['qrt:phi_hat_red'].asserted
    assert results['symplectic:phi_bar_red'].status == 'preserved'
    assert all(r.mode == 'exact' for r in results.values() if r.kind in ('qrt', 'symplectic'))
    assert all(result.positive for result in results.values())

    commute = results['commute:phi_red/phi_hat_red']
    maps = bundle.reduced.maps
    assert commute.status == 'commutes'
    assert commute.mode == 'randomized'
    assert commute.degree_bound == commutator_degree(maps['phi_red'].map, maps['phi_hat_red'].map) > 64
    assert commute.failure_bound > 0
    assert commute.log10_failure_bound < 0


def test_perturbed_invariant_is_caught_with_witness():
    text = (DATA_DIR / catalogue_entry('mcm4d')['formulas']).read_text(encoding='utf-8')
    assert 'h2 := g1 - g2' in text
    broken = FormulaFile.parse(text.replace('h2 := g1 - g2', 'h2 := g1 + g2'), source='broken.qrt')
    bundle = build_bundle('mcm4d', catalogue_entry('mcm4d'), broken)

    for mode in CheckMode:
        policy = ModePolicy(mode_4d=mode, trials=20, seed=5)
        runner = SuiteRunner(bundle, policy)
        runner.invariance()
        result = runner.results['invariant:phi:h2']
        assert result.status == 'violated'
        assert not result.positive
        assert result.witness is not None
        assert result.lhs != result.rhs


def test_errors_become_error_results(exact_policy):
    runner = SuiteRunner(instantiate('mcm4d'), exact_policy)

    def explode(certifier):
        raise KeyError('missing')

    result = runner.record('custom', 'boom', 'confirmed', explode)
    assert result.status == 'error'
    assert not result.positive
    assert runner.errors.get_error_summary()['total_errors'] == 1


@pytest.mark.slow
def test_full_suite_of_mcmillan_passes(exact_policy):
    report = run_suite('mcm4d', ParameterAssignment.symbolic(), exact_policy)
    assert report.passed, [c.check_id for c in report.failures]
    data = report.as_dict()
    assert data['overall'] == 'pass'
    assert data['version'] == '1'
    assert all(check['wall_time'] is None for check in data['checks'])


@pytest.mark.slow
def test_six_dimensional_example_in_randomized_mode():
    policy = ModePolicy.default(seed=3)
    policy.trials = 8
    report = run_suite('mcm6d', None, policy)
    assert report.passed, [c.check_id for c in report.failures]
    checks = _by_id(report)
    assert checks['jacobian:phi'].status == 'confirmed'
    assert checks['volume:phi:' + instantiate('mcm6d').branches[0].density_name].status == 'plus'
    randomized = [c for c in report.checks if c.mode == 'randomized']
    assert randomized
    assert all(c.trials == 8 for c in randomized if c.status in ('confirmed', 'invariant', 'yes', 'commutes'))


@pytest.mark.slow
def test_reports_are_reproducible():
    policy = ModePolicy.all_randomized(trials=5, seed=11)
    first = dump_json(run_suite('mcm4d-alt-h2', None, policy).as_dict())
    second = dump_json(run_suite('mcm4d-alt-h2', None, policy).as_dict())
    assert first == second
    assert json.loads(first)['seed'] == 11


def test_formulas_load_for_mutation():
    assert 'phi' in load_formulas('mcm4d').names


@pytest.mark.slow
def test_yb38_default_suite_runs_within_a_minute():
    start = time.perf_counter()
    report = run_suite('yb38', None, ModePolicy.default())
    elapsed = time.perf_counter() - start
    assert report.passed, [c.check_id for c in report.failures]
    assert elapsed < 60, f"yb38 took {elapsed:.1f}s"


@pytest.mark.slow
def test_catalogue_default_suites_run_within_a_minute():
    start = time.perf_counter()
    for name in ('mcm4d', 'mcm4d-alt-gamma', 'mcm4d-alt-h2', 'adler-yamilov', 'yb38', 'mcm6d'):
        report = run_suite(name, None, ModePolicy.default())
        assert report.passed, (name, [c.check_id for c in report.failures])
    elapsed = time.perf_counter() - start
    assert elapsed < 60, f"catalogue took {elapsed:.1f}s"
