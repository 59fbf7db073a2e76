import pytest

from ogring import (CoeffMode, Conf, ConfGroupExistsError,
                    FrozenConfPropError, UnknownConfError)


def test_load_file(conf, conf1_file):
    with pytest.raises(FileNotFoundError):
        conf.load_file('somewhere/doesnot/exist')

    assert conf.run.threads == 1
    assert conf.run.label == 'nightly'
    conf.load_file(conf1_file)
    assert conf.run.threads == 5
    assert conf.run.label == 'weekly'


def test_load_multiple_file(conf, conf1_file, conf2_file):
    assert conf.run.threads == 1
    assert conf.ring.coeff == CoeffMode.exact()
    conf.load_file(conf1_file)
    assert conf.run.threads == 5
    assert conf.run.label == 'weekly'
    assert conf.ring.coeff == CoeffMode.exact()
    conf.load_file(conf2_file)
    assert conf.run.threads == 6
    assert conf.run.label == 'weekly'
    assert conf.ring.coeff == CoeffMode.modulus(9)
    assert conf.ring.rank == 8


def test_load_multiple_file2(conf, conf1_file, conf2_file):
    conf.load_file(conf2_file)
    assert conf.run.threads == 6
    assert conf.run.label == 'nightly'
    assert conf.ring.coeff == CoeffMode.modulus(9)
    conf.load_file(conf1_file)
    assert conf.run.threads == 5
    assert conf.run.label == 'weekly'
    assert conf.ring.coeff == CoeffMode.modulus(9)


def test_load_conf_before_declare(conf1_file, conf2_file):
    conf = Conf()
    conf.load_file(conf1_file)

    with pytest.raises(UnknownConfError):
        conf.run.threads

    with pytest.raises(UnknownConfError):
        conf.ring.coeff

    with conf.declare_group('run') as g:
        g.threads = 1

    assert conf.run.threads == 5

    # label was never declared, so the file value for it is dropped
    with pytest.raises(UnknownConfError):
        conf.run.label

    with pytest.raises(ConfGroupExistsError):
        with conf.declare_group('run') as g:
            g.label = 'some string'


def test_declare_group_after_load_conf(conf1_file):
    conf = Conf()
    conf.load_file(conf1_file)

    with conf.declare_group('run') as run:
        run.threads = 1
        run.label = 'nightly'

    assert conf.run.threads == 5
    assert conf.run.label == 'weekly'

    with pytest.raises(FrozenConfPropError):
        conf.run.threads = 2


def test_load_envvars(conf, monkeypatch):
    monkeypatch.setenv('proj_X__run__threads', '15')
    monkeypatch.setenv('proj_X__run__label', 'other string')
    monkeypatch.setenv('proj_X__ring__coeff', 'mod:12')
    monkeypatch.setenv('proj_X__ring__strict', 'no')

    conf.load_envvars('proj_X')

    assert conf.run.threads == 15
    assert conf.run.label == 'other string'
    assert conf.ring.coeff == CoeffMode.modulus(12)
    assert conf.ring.strict is False


def test_load_envvars_named_variable(conf, monkeypatch):
    monkeypatch.setenv('TEST_OGRING_SEED', '99')
    conf.load_envvars('proj_Y')
    assert conf.ring.seed == 99
