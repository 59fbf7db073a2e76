"""Verification suites.

Every suite module exposes ``NAME``, ``STATEMENTS`` (statement id to formula)
and ``checks(ctx)``, a generator of :class:`~ogring.suites.runner.CheckSpec`.
"""
import logging

from . import appendix, chow, main_theorem, rees
from .runner import CheckSpec, SuiteContext, run_suite

__all__ = ["SUITES", "MANIFEST", "SuiteContext", "CheckSpec", "run_suite", "run_suites"]

logger = logging.getLogger(__name__)

SUITES = {
    module.NAME: module for module in (appendix, rees, chow, main_theorem)
}

MANIFEST = {
    statement: name
    for name, module in SUITES.items()
    for statement in module.STATEMENTS
}


def run_suites(names, ctx):
    """Run the named suites in order on one shared context.

    Returns
    -------
    list of VerificationCertificate
    """
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise KeyError(f"unknown suites: {unknown}")
    certificates = []
    for name in names:
        cert = run_suite(SUITES[name], ctx)
        logger.info(cert.summary())
        certificates.append(cert)
    return certificates
