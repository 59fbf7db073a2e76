"""The ``verify`` command.

Settings are applied in this order, later ones winning: defaults, the
``--conf`` settings file, command-line flags, environment variables.
"""
import logging
import sys
from pathlib import Path

import click

from ogring.certificate import dumps
from ogring.error import ParameterError, ParseError, UnsupportedRankError
from ogring.settings import conf
from ogring.suites import SUITES, SuiteContext, run_suites

logger = logging.getLogger(__name__)

ENV_PREFIX = "OGRING"

_LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def _load_settings(ctx, param, path):
    ctx.with_resource(conf.mutate_locally())
    if path is not None:
        conf.load_file(path)
    return path


@click.command()
@click.option("--n", "n", type=int, required=True, help="rank of the grassmannian")
@click.option(
    "--suite",
    type=click.Choice([*SUITES, "all"]),
    default="all",
    show_default=True,
)
@click.option(
    "--json",
    "json_path",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="write certificates here instead of stdout",
)
@click.option(
    "--conf",
    type=click.Path(exists=True, dir_okay=False),
    callback=_load_settings,
    is_eager=True,
    expose_value=False,
    help="python settings file (from ogring import c)",
)
@click.option("-v", "--verbose", count=True, help="-v info, -vv debug")
@conf.click_options(flat=True)
def verify(n, suite, json_path, verbose):
    """Verify the congruences behind the torsion-index computation at rank N."""
    logging.basicConfig(
        level=_LOG_LEVELS[min(verbose, len(_LOG_LEVELS) - 1)],
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    conf.load_envvars(ENV_PREFIX)

    names = list(SUITES) if suite == "all" else [suite]
    try:
        ctx = SuiteContext(n)
        if any(getattr(SUITES[name], "THEOREM_RANK_ONLY", False) for name in names):
            ctx.params.require_theorem_rank()
    except (UnsupportedRankError, ParameterError, ParseError) as exc:
        raise click.UsageError(str(exc)) from exc

    certificates = run_suites(names, ctx)
    text = dumps(certificates[0] if suite != "all" else certificates)
    if json_path is None:
        click.echo(text)
    else:
        json_path.write_text(text + "\n")
        logger.info("certificates written to %s", json_path)

    for cert in certificates:
        click.echo(cert.summary(), err=True)
        for check in cert.failures():
            click.echo(f"  FAIL {check.name}: {check.witness}", err=True)

    if not all(cert.passed for cert in certificates):
        sys.exit(1)


def main():
    verify(prog_name="verify")
