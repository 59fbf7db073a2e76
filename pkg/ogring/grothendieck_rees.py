"""The extended Rees ring of the topological filtration on K(X) for split X.

An element is a finite sum of ``c * E[lam] u^l``: the Schubert class of the
strict partition ``lam`` placed in grade ``l``. Grade ``l`` holds the classes
of codimension at least ``l``, so ``l <= |lam|``; ``t`` lowers the grade by
one. The ideal I = (2, t) has the closed-form valuation

    v(c * E[lam] u^l) = v2(c) + (|lam| - l)

and the valuation of a sum is the minimum over its terms, since the
Schubert classes form a free basis of every graded piece.

Multiplication is only ever by generators: ``f(i) = E[i] u^i`` through the
Pieri rule, ``t`` by a grade shift, and ``g(i) = 2 f(i) - t f(i+1)``.

>>> from ogring.params import RingParams
>>> p = RingParams(8)
>>> print(pieri_mul(1, ReesElement.f(p, 1)))
1*E[2]u^2
>>> ideal_valuation(mul_g(3, ReesElement.unit(p)))
Valuation(1)
"""
import functools as fnt
import json
import logging
import math
import re
from collections import defaultdict, namedtuple
from collections.abc import Mapping

from ogring.error import (
    InconsistencyError,
    IndexRangeError,
    MalformedInputError,
    ParamsMismatchError,
    ValuationTooSmallError,
)
from ogring.expression import Int, Symbol, apply, substitute
from ogring.kog_tableaux import pieri_items, strict_partition
from ogring.valuation import Valuation, v2

__all__ = [
    "ReesElement",
    "PointLineCoordinates",
    "pieri_mul",
    "mul_t",
    "mul_g",
    "eval_expression",
    "ideal_valuation",
    "congruent_mod_ideal",
    "graded_component",
    "line_class",
    "point_class",
    "express_in_point_line_basis",
    "canonical_ideal_decomposition",
    "recombine",
    "psi_substitute",
]

logger = logging.getLogger(__name__)

_TERM_RE = re.compile(r"(-?\d+)\*E\[([\d,]*)\]u\^(-?\d+)")

PointLineCoordinates = namedtuple("PointLineCoordinates", "line point remainder")


def _min_precision(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _truncated(terms, precision):
    if precision is None:
        return {key: c for key, c in terms.items() if c}
    out = {}
    for (lam, l), c in terms.items():
        room = precision - (sum(lam) - l)
        if room <= 0:
            continue
        c %= 1 << room
        if c:
            out[(lam, l)] = c
    return out


class ReesElement:
    """Sparse element of the extended Rees ring.

    ``terms`` maps ``(lam, l)`` to a nonzero integer. With a ``precision``
    N the element is only known modulo I^N: terms of valuation >= N are
    dropped and the coefficient of a term with gap q is kept modulo
    2^(N - q). A modulus coefficient mode ``mod:K`` of the ring parameters
    caps the precision at K.
    """

    __slots__ = ("params", "terms", "precision")

    def __init__(self, params, terms=(), precision=None):
        if isinstance(terms, Mapping):
            terms = terms.items()
        n = params.n
        clean = defaultdict(int)
        for (lam, l), c in terms:
            lam = strict_partition(lam)
            if not isinstance(l, int) or isinstance(l, bool):
                raise MalformedInputError(f"grade must be an integer: {l!r}")
            if l > sum(lam):
                raise MalformedInputError(f"E{list(lam)} does not live in grade {l}")
            if lam and lam[0] > n:
                continue
            clean[(lam, l)] += c
        self.params = params
        self.precision = _min_precision(precision, params.coeff_mode.bits)
        self.terms = _truncated(clean, self.precision)

    @classmethod
    def _wrap(cls, params, terms, precision):
        self = cls.__new__(cls)
        self.params = params
        self.precision = precision
        self.terms = _truncated(terms, precision)
        return self

    @classmethod
    def zero(cls, params, precision=None):
        return cls(params, (), precision)

    @classmethod
    def unit(cls, params, precision=None):
        return cls(params, {((), 0): 1}, precision)

    @classmethod
    def schubert(cls, params, lam, l=None, precision=None):
        """``E[lam] u^l``; ``l`` defaults to ``|lam|``."""
        lam = tuple(lam)
        return cls(params, {(lam, sum(lam) if l is None else l): 1}, precision)

    @classmethod
    def f(cls, params, i, precision=None):
        return cls.schubert(params, (i,), precision=precision)

    @classmethod
    def f_pair(cls, params, m, i, precision=None):
        """The pair class ``f_{m,i} = E[m,i] u^(m+i)``."""
        return cls.schubert(params, (m, i), precision=precision)

    @classmethod
    def from_text(cls, params, text, precision=None):
        terms = defaultdict(int)
        text = text.strip()
        if text != "0":
            for chunk in text.split(" + "):
                match = _TERM_RE.fullmatch(chunk.strip())
                if match is None:
                    raise MalformedInputError(f"not a Rees term: {chunk!r}")
                lam = tuple(int(s) for s in match.group(2).split(",") if s)
                terms[(lam, int(match.group(3)))] += int(match.group(1))
        return cls(params, terms, precision)

    @classmethod
    def from_json(cls, params, data):
        if isinstance(data, str):
            data = json.loads(data)
        terms = defaultdict(int)
        for item in data["terms"]:
            terms[(tuple(item["partition"]), int(item["grade"]))] += int(item["coef"])
        return cls(params, terms, data.get("precision"))

    def with_precision(self, precision):
        return ReesElement._wrap(
            self.params, self.terms, _min_precision(self.precision, precision)
        )

    def _sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda item: (item[0][1], sum(item[0][0]), item[0][0]),
        )

    def to_text(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*E[{','.join(map(str, lam))}]u^{l}"
            for (lam, l), c in self._sorted_terms()
        )

    def to_json(self):
        return {
            "precision": self.precision,
            "terms": [
                {"partition": list(lam), "grade": l, "coef": str(c)}
                for (lam, l), c in self._sorted_terms()
            ],
        }

    def grades(self):
        return sorted({l for _, l in self.terms})

    def coefficient(self, lam, l=None):
        lam = tuple(lam)
        return self.terms.get((lam, sum(lam) if l is None else l), 0)

    def _check(self, other):
        if not isinstance(other, ReesElement):
            return False
        if other.params != self.params:
            raise ParamsMismatchError(f"{self.params!r} vs {other.params!r}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        acc = dict(self.terms)
        for key, c in other.terms.items():
            acc[key] = acc.get(key, 0) + c
        return ReesElement._wrap(
            self.params, acc, _min_precision(self.precision, other.precision)
        )

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k):
        if not isinstance(k, int) or isinstance(k, bool):
            return NotImplemented
        return ReesElement._wrap(
            self.params, {key: c * k for key, c in self.terms.items()}, self.precision
        )

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ReesElement):
            return NotImplemented
        return (self.params, self.precision, self.terms) == (
            other.params,
            other.precision,
            other.terms,
        )

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        prec = "" if self.precision is None else f" mod I^{self.precision}"
        return f"<{__name__}.{type(self).__qualname__} n={self.params.n}{prec} {self.to_text()}>"


def pieri_mul(i, x):
    """Multiply by ``f(i)``; ``i > n`` gives zero."""
    if not isinstance(i, int) or i <= 0:
        raise IndexRangeError(f"f({i}) is not a generator")
    n = x.params.n
    if i > n:
        return ReesElement.zero(x.params, x.precision)
    acc = defaultdict(int)
    for (lam, l), c in x.terms.items():
        most = None
        if x.precision is not None:
            # the gap grows by |nu| - |lam| - i and must stay below the precision
            most = x.precision - (sum(lam) - l) - 1 + i
        for nu, d in pieri_items(lam, i, n, most):
            acc[(nu, l + i)] += c * d
    return ReesElement._wrap(x.params, acc, x.precision)


def mul_t(x, k=1):
    """Multiply by ``t^k``."""
    return ReesElement._wrap(
        x.params, {(lam, l - k): c for (lam, l), c in x.terms.items()}, x.precision
    )


def mul_g(i, x):
    """Multiply by ``g(i) = 2 f(i) - t f(i+1)``."""
    return pieri_mul(i, x) * 2 - mul_t(pieri_mul(i + 1, x))


def _act(symbol, element):
    if symbol.kind == "F":
        return pieri_mul(symbol.index, element)
    if symbol.kind == "G":
        return mul_g(symbol.index, element)
    return mul_t(element)


def eval_expression(expr, params, precision=None, start=None):
    """Value of a K-side expression (``F``, ``G``, ``T`` and integers).

    The expression is applied, factor by factor from the right, to ``start``
    (the unit by default).
    """
    expr.require_side("K")
    if start is None:
        start = ReesElement.unit(params, precision)
    elif precision is not None:
        start = start.with_precision(precision)
    return apply(expr, start, _act)


def ideal_valuation(x):
    """Largest N with x in I^N; capped (a lower bound) at the precision."""
    value = min(
        (v2(c) + sum(lam) - l for (lam, l), c in x.terms.items()), default=math.inf
    )
    return Valuation.from_minimum(value, cap=x.precision)


def congruent_mod_ideal(a, b, N):
    return ideal_valuation(a - b).at_least(N)


def graded_component(x, l):
    return ReesElement._wrap(
        x.params,
        {(lam, grade): c for (lam, grade), c in x.terms.items() if grade == l},
        x.precision,
    )


@fnt.lru_cache(maxsize=None)
def _line_top(params):
    x = ReesElement.unit(params)
    for i in range(params.n, 1, -1):
        x = pieri_mul(i, x)
    logger.debug("line class for n=%d has %d terms", params.n, len(x))
    return x


def line_class(params, l):
    """``f(2) ... f(n)`` moved to grade ``l`` (at most dim X - 1)."""
    top = params.dim_x - 1
    if l > top:
        raise IndexRangeError(f"the line class has no grade {l} > {top}")
    return mul_t(_line_top(params), top - l)


def point_class(params, l):
    """``f(1) ... f(n)`` moved to grade ``l`` (at most dim X)."""
    top = params.dim_x
    if l > top:
        raise IndexRangeError(f"the point class has no grade {l} > {top}")
    return mul_t(pieri_mul(1, _line_top(params)), top - l)


def express_in_point_line_basis(x, l):
    """Coordinates of ``x`` against the line and point classes in grade ``l``.

    Returns
    -------
    PointLineCoordinates
        ``(line, point, remainder)`` with ``x = line * line_class + point *
        point_class``; ``remainder`` is the zero element.

    Raises
    ------
    InconsistencyError
        ``x`` is not such a combination.
    """
    params = x.params
    n = params.n
    full = tuple(range(n, 0, -1))
    sub = tuple(range(n, 1, -1))
    for lam, grade in x.terms:
        if grade != l or lam not in (full, sub):
            raise InconsistencyError(
                f"E{list(lam)}u^{grade} lies outside the point/line span in grade {l}"
            )
    line = line_class(params, l)
    point = point_class(params, l)
    lead = line.coefficient(sub, l)
    line_a, rest = divmod(x.coefficient(sub, l), lead)
    if rest:
        raise InconsistencyError(f"line coordinate is not integral ({rest}/{lead})")
    pc = point.coefficient(full, l)
    point_b, rest = divmod(x.coefficient(full, l) - line_a * line.coefficient(full, l), pc)
    if rest:
        raise InconsistencyError(f"point coordinate is not integral ({rest}/{pc})")
    remainder = x - line * line_a - point * point_b
    if remainder:
        raise InconsistencyError(f"nonzero remainder {remainder}")
    return PointLineCoordinates(line_a, point_b, remainder)


def canonical_ideal_decomposition(x, N, q_max=None):
    """Write ``x`` in I^N as ``sum_q 2^(N-q) t^q y_q`` for q = 0, ..., q_max.

    A term with gap q goes to bucket ``min(q, q_max)``; ``q_max`` defaults
    to N.

    Returns
    -------
    list of (int, ReesElement)
        every bucket, in increasing q; ``y_q`` lives in grade ``l + q``.

    Raises
    ------
    ValuationTooSmallError
        ``x`` is not in I^N, or a deep term is not divisible by 2^(N-q_max).
    """
    if q_max is None:
        q_max = N
    grades = x.grades()
    if len(grades) > 1:
        raise MalformedInputError(f"not homogeneous: grades {grades}")
    if not ideal_valuation(x).at_least(N):
        raise ValuationTooSmallError(f"{x!r} is not in I^{N}")
    buckets = [defaultdict(int) for _ in range(q_max + 1)]
    for (lam, l), c in x.terms.items():
        q = min(sum(lam) - l, q_max)
        divisor = 1 << max(N - q, 0)
        if c % divisor:
            raise ValuationTooSmallError(
                f"coefficient {c} of E{list(lam)}u^{l} is not divisible by {divisor}"
            )
        buckets[q][(lam, l + q)] += c // divisor
    return [
        (q, ReesElement._wrap(x.params, terms, _bucket_precision(x.precision, N, q)))
        for q, terms in enumerate(buckets)
    ]


def _bucket_precision(precision, N, q):
    if precision is None:
        return None
    return precision - max(N, q)


def recombine(buckets, N):
    """Inverse of :func:`canonical_ideal_decomposition` on any nonempty sub-list."""
    if not buckets:
        raise MalformedInputError("nothing to recombine")
    acc = defaultdict(int)
    precision = None
    for q, y in buckets:
        if y.precision is not None:
            precision = _min_precision(precision, y.precision + max(N, q))
        scale = 1 << max(N - q, 0)
        for (lam, l), c in y.terms.items():
            acc[(lam, l - q)] += c * scale
    return ReesElement._wrap(buckets[0][1].params, acc, precision)


def _psi(symbol):
    if symbol.kind == "F":
        return Symbol("Ei", symbol.index)
    if symbol.kind == "G":
        return Int(2) * Symbol("Ei", symbol.index)
    if symbol.kind == "T":
        return Int(0)
    return symbol


def psi_substitute(expr):
    """K-side expression to its Chow-side image: F(i) -> e(i), G(i) -> 2e(i), t -> 0."""
    expr.require_side("K")
    return substitute(expr, _psi)
