import csv
import json

import pytest

from src.cli.main import run_cli


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding='utf-8')
    return str(path)


def test_list(capsys):
    assert run_cli(['list']) == 0
    lines = [line for line in capsys.readouterr().out.splitlines() if line.strip()]
    assert len(lines) == 6
    assert lines[0].split()[:2] == ['mcm4d', '4d']

    assert run_cli(['list', '--dim', '6']) == 0
    lines = [line for line in capsys.readouterr().out.splitlines() if line.strip()]
    assert len(lines) == 1 and lines[0].startswith('mcm6d')


def test_usage_errors(capsys):
    assert run_cli(['frobnicate']) == 2
    assert run_cli(['verify']) == 2
    assert run_cli(['verify', 'mcm5d']) == 2
    assert 'unknown example' in capsys.readouterr().err
    assert run_cli(['verify', 'mcm4d', '--param', 'a=0.5']) == 2


def test_qrt_of_a_circle(tmp_path, capsys):
    path = _write(tmp_path, 'circle.qrt', "h := u^2 + v^2\n")
    assert run_cli(['qrt', '--invariant', path, '--u', 'u', '--v', 'v']) == 0
    out = capsys.readouterr().out
    assert 'u -> -u' in out
    assert 'v -> -v' in out


def test_qrt_rejects_non_biquadratic(tmp_path):
    path = _write(tmp_path, 'cubic.qrt', "h := u^3 + v^2\n")
    assert run_cli(['qrt', '--invariant', path, '--u', 'u', '--v', 'v']) == 3
    assert run_cli(['qrt', '--invariant', path, '--u', 'u', '--v', 'w']) == 2


def test_orbit_csv_and_singular_start(tmp_path):
    out = tmp_path / 'orbit.csv'
    code = run_cli(['orbit', 'mcm4d', '--map', 'phi_red', '--start', '1,5', '--param', 'a=1',
                    '--param', 'k=2', '--steps', '20', '--output', str(out)])
    assert code == 0
    with open(out, newline='') as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ['u1', 'v1', 'h1_red']
    assert len(rows) == 22
    assert {row[2] for row in rows[1:]} == {'-10'}

    singular = ['orbit', 'mcm4d', '--map', 'phi_red', '--start', '1,3', '--param', 'a=1', '--param', 'k=2']
    assert run_cli(singular) == 3
    assert run_cli(['orbit', 'mcm4d', '--map', 'phi_red', '--start', '1,5', '--param', 'a=1']) == 2
    assert run_cli(['orbit', 'mcm4d', '--map', 'nope', '--start', '1,5']) == 2


def test_reduce_check(tmp_path, capsys):
    phi = _write(tmp_path, 'phi.qrt', "phi := (y, -x)\n")
    pi = _write(tmp_path, 'pi.qrt', "pi := (x^2 + y^2, x*y)\n")
    good = _write(tmp_path, 'psi.qrt', "psi := (r, -s)\n")
    bad = _write(tmp_path, 'bad.qrt', "psi := (r, s)\n")
    base = ['reduce-check', '--phi', phi, '--pi', pi, '--variables', 'x,y', '--targets', 'r,s']
    assert run_cli(base + ['--psi', good]) == 0
    capsys.readouterr()
    assert run_cli(base + ['--psi', bad, '--format', 'json']) == 1
    result = json.loads(capsys.readouterr().out)
    assert result['status'] == 'violated'
    assert result['witness'] is not None


@pytest.mark.slow
def test_verify_writes_json_report(tmp_path):
    out = tmp_path / 'report.json'
    code = run_cli(['verify', 'mcm4d-alt-h2', '--mode', 'randomized', '--trials', '5',
                    '--seed', '4', '--output', str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report['version'] == '1'
    assert report['overall'] == 'pass'
    assert report['seed'] == 4
    assert report['example'] == 'mcm4d-alt-h2'
    assert all(check['positive'] for check in report['checks'])
