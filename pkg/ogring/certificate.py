"""Verification certificates: one named check per verified statement."""
import json
import logging

import pendulum

__all__ = [
    "PASS",
    "FAIL",
    "ASSUMED",
    "SKIPPED",
    "STATUSES",
    "Check",
    "VerificationCertificate",
    "dumps",
]

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
ASSUMED = "assumed-structural"
SKIPPED = "skipped"
STATUSES = (PASS, FAIL, ASSUMED, SKIPPED)


def utc_now():
    return pendulum.now("UTC")


class Check:
    """Outcome of one check.

    Parameters
    ----------
    name : str
        unique within its suite
    reference : str
        statement id from ``ogring.suites.MANIFEST``
    formula : str
        the verified identity, in plain text
    status : str
        one of ``STATUSES``
    witness : dict
        JSON-serializable evidence: valuations, coefficients, parameters
    """

    __slots__ = ("name", "reference", "formula", "status", "witness")

    def __init__(self, name, reference, formula, status, witness=None):
        if status not in STATUSES:
            raise ValueError(f"unknown check status {status!r}")
        self.name = name
        self.reference = reference
        self.formula = formula
        self.status = status
        self.witness = {} if witness is None else witness

    @property
    def ok(self):
        return self.status != FAIL

    @property
    def paper_ref(self):
        """Statement id and its formula, e.g. ``k.theorem-a: f(1)^... = 0 mod I^(m+1)``."""
        return f"{self.reference}: {self.formula}" if self.formula else self.reference

    def to_json(self):
        return {
            "name": self.name,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "witness": self.witness,
        }

    def __repr__(self):
        return f"<{__name__}.{type(self).__qualname__} {self.name} {self.status}>"


class VerificationCertificate:
    __slots__ = ("suite", "n", "engine", "started_at", "finished_at", "timing", "checks")

    def __init__(self, suite, n, engine, started_at, finished_at, timing, checks):
        self.suite = suite
        self.n = n
        self.engine = engine
        self.started_at = started_at
        self.finished_at = finished_at
        self.timing = timing
        self.checks = sorted(checks, key=lambda check: check.name)

    @property
    def passed(self):
        return all(check.ok for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.ok]

    def counts(self):
        out = dict.fromkeys(STATUSES, 0)
        for check in self.checks:
            out[check.status] += 1
        return out

    def to_json(self):
        return {
            "suite": self.suite,
            "n": self.n,
            "engine": self.engine,
            "started_at": self.started_at.to_iso8601_string(),
            "finished_at": self.finished_at.to_iso8601_string(),
            "timing": {name: round(self.timing[name], 6) for name in sorted(self.timing)},
            "checks": [check.to_json() for check in self.checks],
        }

    def summary(self):
        counts = ", ".join(f"{k}={v}" for k, v in self.counts().items() if v)
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.suite} n={self.n}: {verdict} ({counts})"

    def __repr__(self):
        return f"<{__name__}.{type(self).__qualname__} {self.summary()}>"


def dumps(certificates):
    """JSON text of one certificate, or an array of several."""
    if isinstance(certificates, VerificationCertificate):
        data = certificates.to_json()
    else:
        data = [cert.to_json() for cert in certificates]
    return json.dumps(data, indent=2, sort_keys=False)
