import pytest

from config import CheckMode, ModePolicy, QrtwConfig, load_workbench_config


def test_default_file_matches_builtin_defaults(monkeypatch):
    monkeypatch.delenv('QRTW_SEED', raising=False)
    policy = load_workbench_config().get_mode_policy()
    assert policy.seed == 0
    assert policy.trials == 200
    assert policy.mode_for('invariant:phi:h1', 4) is CheckMode.EXACT
    assert policy.mode_for('invariant:phi:h1', 6) is CheckMode.RANDOMIZED
    assert policy.sampling.high == 2 ** 32
    assert policy.exact_degree_cap == 64


def test_seed_resolution_order(monkeypatch):
    config = QrtwConfig()
    monkeypatch.setenv('QRTW_SEED', '42')
    assert config.resolve_seed() == 42
    assert config.resolve_seed(7) == 7
    monkeypatch.setenv('QRTW_SEED', 'many')
    with pytest.raises(ValueError):
        config.resolve_seed()


def test_yaml_overrides(tmp_path, monkeypatch):
    monkeypatch.delenv('QRTW_SEED', raising=False)
    path = tmp_path / 'qrtw-config.yml'
    path.write_text(
        "verification:\n"
        "  seed: 9\n"
        "  trials: 25\n"
        "  mode_6d: exact\n"
        "  overrides:\n"
        "    'volume:phi:one': randomized\n"
        "orbit:\n"
        "  steps: 5\n"
    )
    config = QrtwConfig(str(path))
    policy = config.get_mode_policy()
    assert policy.seed == 9
    assert policy.trials == 25
    assert policy.mode_for('volume:phi:one', 4) is CheckMode.RANDOMIZED
    assert policy.mode_for('volume:phi_hat:one', 6) is CheckMode.EXACT
    assert config.get_orbit_config().steps == 5
    assert config.get_orbit_config().bit_cap == 2 ** 16


def test_missing_file_falls_back_to_defaults(tmp_path):
    config = QrtwConfig(str(tmp_path / 'absent.yml'))
    assert config.get_sampling_config().max_rejections == 1000


def test_policy_presets():
    assert ModePolicy.all_exact().mode_for('x', 6) is CheckMode.EXACT
    randomized = ModePolicy.all_randomized(trials=10, seed=3)
    assert randomized.mode_for('x', 4) is CheckMode.RANDOMIZED
    assert (randomized.trials, randomized.seed) == (10, 3)


def test_degree_cap_routes_costly_exact_checks():
    policy = ModePolicy.default()
    assert policy.mode_for('commute:f/g', 4, degree=64) is CheckMode.EXACT
    assert policy.mode_for('commute:f/g', 4, degree=65) is CheckMode.RANDOMIZED
    assert policy.mode_for('commute:f/g', 4) is CheckMode.EXACT
    assert ModePolicy.all_exact().mode_for('commute:f/g', 4, degree=10 ** 6) is CheckMode.EXACT

    policy.overrides['commute:f/g'] = CheckMode.EXACT
    assert policy.mode_for('commute:f/g', 4, degree=10 ** 6) is CheckMode.EXACT


def test_degree_cap_can_be_disabled_in_yaml(tmp_path, monkeypatch):
    monkeypatch.delenv('QRTW_SEED', raising=False)
    path = tmp_path / 'qrtw-config.yml'
    path.write_text("verification:\n  exact_degree_cap: null\n")
    policy = QrtwConfig(str(path)).get_mode_policy()
    assert policy.exact_degree_cap is None
    assert policy.mode_for('commute:f/g', 4, degree=10 ** 6) is CheckMode.EXACT
