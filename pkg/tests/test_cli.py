import json
import logging

import pytest

from ogring.settings import conf

click = pytest.importorskip("click")


@pytest.fixture(scope='function')
def runner():
    from click.testing import CliRunner
    return CliRunner()


@pytest.fixture(scope='function')
def verify_cmd():
    from ogring.cli import verify
    return verify


def _certificate(path):
    return json.loads(path.read_text())


def test_help(runner, verify_cmd):
    result = runner.invoke(verify_cmd, ['--help'])
    assert result.exit_code == 0
    for option in ('--n', '--suite', '--json', '--conf', '--coeff',
                   '--threads', '--seed', '--samples', '--max-power'):
        assert option in result.output


def test_appendix_writes_certificate(runner, verify_cmd, tmp_path):
    out = tmp_path / 'cert.json'
    result = runner.invoke(verify_cmd, [
        '--n', '4', '--suite', 'appendix_pieri', '--samples', '10', '--json', str(out)])
    assert result.exit_code == 0, result.output
    data = _certificate(out)
    assert data['suite'] == 'appendix_pieri'
    assert data['n'] == 4
    assert data['engine']['coeff_mode'] == 'exact'
    assert all(check['status'] == 'pass' for check in data['checks'])


def test_theorem_suite_rejects_rank(runner, verify_cmd):
    result = runner.invoke(verify_cmd, ['--n', '12', '--suite', 'main_theorem'])
    assert result.exit_code == 2


def test_default_modulus_needs_theorem_rank(runner, verify_cmd):
    result = runner.invoke(verify_cmd, ['--n', '12', '--suite', 'appendix_pieri', '--coeff', 'mod'])
    assert result.exit_code == 2


def test_bad_coeff(runner, verify_cmd):
    result = runner.invoke(verify_cmd, ['--n', '4', '--coeff', 'float'])
    assert result.exit_code == 2


def test_settings_file(runner, verify_cmd, verify_settings_file, tmp_path):
    out = tmp_path / 'cert.json'
    result = runner.invoke(verify_cmd, [
        '--conf', str(verify_settings_file),
        '--n', '3', '--suite', 'appendix_pieri', '--json', str(out)])
    assert result.exit_code == 0, result.output
    assert _certificate(out)['engine']['seed'] == 11


def test_flag_beats_settings_file(runner, verify_cmd, verify_settings_file, tmp_path):
    out = tmp_path / 'cert.json'
    result = runner.invoke(verify_cmd, [
        '--n', '3', '--suite', 'appendix_pieri', '--seed', '5',
        '--conf', str(verify_settings_file), '--json', str(out)])
    assert result.exit_code == 0, result.output
    assert _certificate(out)['engine']['seed'] == 5


def test_explicit_default_flag_beats_settings_file(runner, verify_cmd, verify_settings_file, tmp_path):
    out = tmp_path / 'cert.json'
    result = runner.invoke(verify_cmd, [
        '--conf', str(verify_settings_file), '--seed', '20240229',
        '--n', '3', '--suite', 'appendix_pieri', '--json', str(out)])
    assert result.exit_code == 0, result.output
    assert _certificate(out)['engine']['seed'] == 20240229


def test_envvar_beats_flag(runner, verify_cmd, tmp_path):
    out = tmp_path / 'cert.json'
    result = runner.invoke(
        verify_cmd,
        ['--n', '3', '--suite', 'appendix_pieri', '--samples', '5',
         '--seed', '5', '--json', str(out)],
        env={'OGRING__verify__seed': '9'})
    assert result.exit_code == 0, result.output
    assert _certificate(out)['engine']['seed'] == 9


def test_threads_envvar(runner, verify_cmd, tmp_path, caplog):
    caplog.set_level(logging.INFO, logger='ogring')
    result = runner.invoke(
        verify_cmd,
        ['--n', '3', '--suite', 'appendix_pieri', '--samples', '5',
         '--threads', '1', '--json', str(tmp_path / 'cert.json')],
        env={'OGRING_THREADS': '2'})
    assert result.exit_code == 0, result.output
    assert 'on 2 threads' in caplog.text


def test_invocation_leaves_global_conf(runner, verify_cmd, verify_settings_file, tmp_path):
    runner.invoke(verify_cmd, [
        '--conf', str(verify_settings_file), '--n', '3', '--suite', 'appendix_pieri',
        '--json', str(tmp_path / 'cert.json')])
    assert conf.verify.seed == 20240229
    assert conf.verify.samples == 500
