import json

import pendulum as pdl
import pytest

from ogring.certificate import (ASSUMED, FAIL, PASS, SKIPPED, Check,
                                VerificationCertificate, dumps)


@pytest.fixture
def certificate():
    start = pdl.datetime(2024, 2, 29, 12, 0, 0, tz='UTC')
    checks = [
        Check('b.second', 'x.two', 'x = y', PASS, {'v_K': 5}),
        Check('a.first', 'x.one', 'z in I^2', ASSUMED, {'assumption': 'structural'}),
        Check('c.third', 'x.three', 'n = 8 only', SKIPPED, {'reason': 'n = 16'}),
    ]
    return VerificationCertificate(
        suite='demo', n=8,
        engine={'coeff_mode': 'exact', 'version': '0.1.0', 'seed': 1},
        started_at=start, finished_at=start.add(seconds=3),
        timing={'a.first': 0.25, 'b.second': 1.0, 'c.third': 0.0},
        checks=checks)


def test_unknown_status():
    with pytest.raises(ValueError):
        Check('x', 'y', 'z', 'maybe')


def test_checks_sorted_and_passed(certificate):
    assert [c.name for c in certificate.checks] == ['a.first', 'b.second', 'c.third']
    assert certificate.passed
    assert certificate.failures() == []
    assert certificate.counts() == {PASS: 1, FAIL: 0, ASSUMED: 1, SKIPPED: 1}
    assert certificate.summary() == 'demo n=8: PASS (pass=1, assumed-structural=1, skipped=1)'


def test_failure_breaks_pass(certificate):
    certificate.checks[1].status = FAIL
    assert not certificate.passed
    assert [c.name for c in certificate.failures()] == ['b.second']


def test_json_layout(certificate):
    data = json.loads(dumps(certificate))
    assert data['suite'] == 'demo'
    assert data['engine']['seed'] == 1
    assert data['started_at'].startswith('2024-02-29T12:00:00')
    assert data['checks'][1] == {
        'name': 'b.second',
        'paper_ref': 'x.two: x = y',
        'status': 'pass',
        'witness': {'v_K': 5},
    }
    assert data['timing']['a.first'] == 0.25


def test_dumps_list(certificate):
    data = json.loads(dumps([certificate, certificate]))
    assert isinstance(data, list)
    assert len(data) == 2
