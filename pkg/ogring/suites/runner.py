"""Shared machinery of the verification suites."""
import logging
import random
import threading
import time
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

from ogring.certificate import ASSUMED, FAIL, PASS, SKIPPED, Check, VerificationCertificate, utc_now
from ogring.chow_ring import evaluate, two_adic_valuation
from ogring.error import OgringError
from ogring.families import IndexFamilies
from ogring.grothendieck_rees import eval_expression, ideal_valuation
from ogring.params import RingParams
from ogring.settings import conf

__all__ = [
    "CheckSpec",
    "SuiteContext",
    "run_suite",
    "verdict",
    "skipped",
    "assumed",
    "k_congruence",
    "k_at_least",
    "chow_congruence",
    "chow_at_least",
]

logger = logging.getLogger(__name__)

CheckSpec = namedtuple("CheckSpec", "name reference run")


class SuiteContext:
    """Rank, configuration snapshot and shared memo of one verification run.

    Several checks need the same large products (powers of f(1) or e(1));
    ``memo`` computes each once even when checks run on worker threads.
    """

    __slots__ = (
        "n",
        "params",
        "families",
        "seed",
        "samples",
        "max_power",
        "threads",
        "_memo",
        "_key_locks",
        "_lock",
    )

    def __init__(self, n, coeff_mode=None, *, seed=None, samples=None, max_power=None, threads=None):
        self.n = n
        self.params = RingParams(n, conf.engine.coeff if coeff_mode is None else coeff_mode)
        self.families = IndexFamilies(n) if self.params.is_theorem_rank else None
        self.seed = conf.verify.seed if seed is None else seed
        self.samples = conf.verify.samples if samples is None else samples
        self.max_power = conf.verify.max_power if max_power is None else max_power
        self.threads = conf.verify.threads if threads is None else threads
        self._memo = {}
        self._key_locks = {}
        self._lock = threading.Lock()

    @property
    def theorem_precision(self):
        """Precision of the theorem-element computations: m + 4."""
        return self.params.m + 4

    def memo(self, key, compute):
        if key in self._memo:
            return self._memo[key]
        with self._lock:
            key_lock = self._key_locks.setdefault(key, threading.Lock())
        with key_lock:
            if key not in self._memo:
                self._memo[key] = compute()
        return self._memo[key]

    def rees(self, expr, precision=None):
        return self.memo(
            ("K", expr, precision),
            lambda: eval_expression(expr, self.params, precision),
        )

    def rees_power(self, factor, j, precision, tail=None):
        """``factor^j * tail``, one factor at a time through the memo, so each
        power of the same word is built once per precision."""
        if j == 1:
            start = None if tail is None else self.rees(tail, precision)
        else:
            start = self.rees_power(factor, j - 1, precision, tail)
        return self.memo(
            ("K^", factor, j, tail, precision),
            lambda: eval_expression(factor, self.params, precision, start),
        )

    def chow(self, expr):
        return self.memo(("CH", expr), lambda: evaluate(expr, self.params))

    def rng(self, name):
        return random.Random(f"{self.seed}:{name}")

    def engine_info(self):
        import ogring

        return {
            "coeff_mode": str(self.params.coeff_mode),
            "version": ogring.__version__,
            "seed": self.seed,
        }


def verdict(ok, witness):
    return (PASS if ok else FAIL), witness


def skipped(reason):
    return SKIPPED, {"reason": reason}


def assumed(reason, **witness):
    witness["assumption"] = reason
    return ASSUMED, witness


def k_at_least(x, N):
    """Decide ``x`` in I^N; the witness records v_K(x)."""
    v = ideal_valuation(x)
    return v.at_least(N), {"N": N, "v_K": v.to_json()}


def k_congruence(lhs, rhs, N):
    ok, witness = k_at_least(lhs - rhs, N)
    witness["v_K(lhs-rhs)"] = witness.pop("v_K")
    return ok, witness


def chow_at_least(x, N):
    v = two_adic_valuation(x)
    return v.at_least(N), {"N": N, "v2": v.to_json()}


def chow_congruence(lhs, rhs, N):
    ok, witness = chow_at_least(lhs - rhs, N)
    witness["v2(lhs-rhs)"] = witness.pop("v2")
    return ok, witness


def _run_one(ctx, spec):
    started = time.perf_counter()
    try:
        status, witness = spec.run(ctx)
    except OgringError as exc:
        logger.warning("check %s raised %s", spec.name, exc)
        status, witness = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
    elapsed = time.perf_counter() - started
    logger.info("%s: %s (%.2fs)", spec.name, status, elapsed)
    return Check(spec.name, spec.reference, "", status, witness), elapsed


def run_suite(suite, ctx):
    """Run every check of ``suite`` and assemble its certificate.

    Parameters
    ----------
    suite : module
        exposes ``NAME``, ``STATEMENTS`` (id -> formula) and ``checks(ctx)``
    ctx : SuiteContext

    Raises
    ------
    UnsupportedRankError
        the suite needs a theorem rank
    """
    started_at = utc_now()
    if getattr(suite, "THEOREM_RANK_ONLY", False):
        ctx.params.require_theorem_rank()
    specs = list(suite.checks(ctx))
    names = [spec.name for spec in specs]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate check names in suite {suite.NAME}")

    logger.info("suite %s n=%d: %d checks on %d threads", suite.NAME, ctx.n, len(specs), ctx.threads)
    with ThreadPoolExecutor(max_workers=max(ctx.threads, 1)) as pool:
        results = list(pool.map(lambda spec: _run_one(ctx, spec), specs))

    checks = []
    timing = {}
    for check, elapsed in results:
        check.formula = suite.STATEMENTS[check.reference]
        checks.append(check)
        timing[check.name] = elapsed

    return VerificationCertificate(
        suite=suite.NAME,
        n=ctx.n,
        engine=ctx.engine_info(),
        started_at=started_at,
        finished_at=utc_now(),
        timing=timing,
        checks=checks,
    )
