import pytest

from ogring import CoeffMode

click = pytest.importorskip("click")


@pytest.fixture(scope='function')
def click_runner(request):
    from click.testing import CliRunner
    return CliRunner()


def test_help(conf, click_runner):
    @click.command()
    @conf.click_options
    def cli():
        return

    result = click_runner.invoke(cli, ['--help'])
    assert result.exit_code == 0
    for option in ('--run-threads', '--run-label', '--ring-coeff',
                   '--ring-rank', '--ring-strict', '--ring-seed'):
        assert option in result.output
    assert 'COEFF' in result.output


def test_flat_help(conf, click_runner):
    @click.command()
    @conf.click_options(flat=True)
    def cli():
        return

    result = click_runner.invoke(cli, ['--help'])
    assert '--threads' in result.output
    assert '--coeff' in result.output
    assert '--run-threads' not in result.output


def test_builtin_types(conf, click_runner):
    @click.command()
    @conf.click_options
    def cli():
        click.echo(f'run.label = {conf.run.label}')
        click.echo(f'run.threads = {conf.run.threads}')
        click.echo(f'ring.strict = {conf.ring.strict}')

    assert conf.run.label == 'nightly'
    assert conf.run.threads == 1
    assert conf.ring.strict is True

    result = click_runner.invoke(
        cli, ['--run-label', 'octopus',
              '--run-threads', '4',
              '--ring-strict', 'False'
              ])
    assert result.output == ('run.label = octopus\n'
                             'run.threads = 4\n'
                             'ring.strict = False\n'
                             )
    assert conf.run.label == 'octopus'
    assert conf.run.threads == 4
    assert conf.ring.strict is False


def test_coeff_type(conf, click_runner):
    @click.command()
    @conf.click_options
    def cli():
        click.echo(f'ring.coeff = {conf.ring.coeff}')

    result = click_runner.invoke(cli, ['--ring-coeff', 'mod:11'], catch_exceptions=False)
    assert result.output == 'ring.coeff = mod:11\n'
    assert conf.ring.coeff == CoeffMode.modulus(11)


def test_bad_coeff_is_usage_error(conf, click_runner):
    @click.command()
    @conf.click_options
    def cli():
        return

    result = click_runner.invoke(cli, ['--ring-coeff', 'mod:x'])
    assert result.exit_code == 2
    assert 'mod:x' in result.output


def test_default_leaves_value_alone(conf, click_runner, conf1_file):
    conf.load_file(conf1_file)

    @click.command()
    @conf.click_options
    def cli():
        click.echo(f'run.threads = {conf.run.threads}')

    result = click_runner.invoke(cli, [])
    assert result.output == 'run.threads = 5\n'


def test_explicit_default_overrides_settings_file(conf, click_runner, conf1_file):
    conf.load_file(conf1_file)

    @click.command()
    @conf.click_options
    def cli():
        click.echo(f'run.threads = {conf.run.threads}')

    result = click_runner.invoke(cli, ['--run-threads', '1'])
    assert result.output == 'run.threads = 1\n'
