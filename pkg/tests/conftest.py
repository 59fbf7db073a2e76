import textwrap

import pytest

from ogring import CoeffMode, Conf, RingParams, prop
from ogring.suites import SuiteContext


@pytest.fixture(scope='function')
def conf():
    conf = Conf()

    conf.declare_group(
        'run',
        threads=1,
        label='nightly')

    with conf.declare_group('ring') as g:
        g.coeff = CoeffMode.exact()
        g.rank = 8
        g.strict = True
        g.seed = prop(default=7, envvar='TEST_OGRING_SEED')
    return conf


@pytest.fixture(scope='session')
def conf1_file(tmpdir_factory):
    p = tmpdir_factory.getbasetemp().join('conf1.py')
    p.write(textwrap.dedent('''
        from ogring import c
        c.run.threads = 5
        c.run.label = 'weekly'
        '''))
    return p


@pytest.fixture(scope='session')
def conf2_file(tmpdir_factory):
    p = tmpdir_factory.getbasetemp().join('conf2.py')
    p.write(textwrap.dedent('''
        from ogring import c
        c.run.threads = 6

        c.ring.coeff = 'mod:9'
        '''))
    return p


@pytest.fixture(scope='session')
def verify_settings_file(tmpdir_factory):
    p = tmpdir_factory.getbasetemp().join('verify_settings.py')
    p.write(textwrap.dedent('''
        from ogring import c
        c.verify.seed = 11
        c.verify.samples = 20
        '''))
    return p


@pytest.fixture(scope='session')
def p4():
    return RingParams(4)


@pytest.fixture(scope='session')
def p8():
    return RingParams(8)


@pytest.fixture(scope='session')
def p8_mod():
    return RingParams(8, CoeffMode.modulus())


@pytest.fixture(scope='module')
def ctx8():
    return SuiteContext(8, CoeffMode.exact(), seed=20240229, samples=50, max_power=4, threads=1)
