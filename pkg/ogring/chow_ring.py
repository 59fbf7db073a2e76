"""Exact arithmetic in the Chow ring of the split maximal orthogonal grassmannian.

The ring is generated by e(1), ..., e(n) subject to

    e(i)^2 = (-1)^(i+1) e(2i) + 2 * sum_{k=1}^{i-1} (-1)^(k+1) e(i-k) e(i+k)

with e(j) = 0 for j > n. As an abelian group it is free on the square-free
monomials e(I), I a subset of [1, n]. A monomial is stored as the strictly
increasing tuple of its indices.

>>> from ogring.params import RingParams
>>> p = RingParams(8)
>>> print(normalize({(2, 2): 1}, p))
2*e[1,3] + -1*e[4]
>>> e1 = ChowElement.generator(p, 1)
>>> two_adic_valuation(power(e1, 8) - ChowElement.generator(p, 8)) >= 1
True
"""
import json
import logging
import math
import re
import threading
from collections import defaultdict
from collections.abc import Mapping

from ogring.error import (
    ExpressionTypeError,
    MalformedInputError,
    ParamsMismatchError,
)
from ogring.expression import apply
from ogring.settings import conf
from ogring.valuation import Valuation, v2

__all__ = [
    "ChowElement",
    "normalize",
    "largest_repeated",
    "smallest_repeated",
    "mul",
    "power",
    "two_adic_valuation",
    "congruent_mod_two_power",
    "coefficient",
    "degree_top",
    "evaluate",
]

logger = logging.getLogger(__name__)

_TERM_RE = re.compile(r"(-?\d+)\*e\[([\d,]*)\]")


def _order_key(multiset):
    return tuple(sorted(multiset, reverse=True))


def _rewrite(multiset, i, n):
    """Terms replacing one occurrence of e(i)^2 in ``multiset``."""
    rest = list(multiset)
    rest.remove(i)
    rest.remove(i)
    if 2 * i <= n:
        yield tuple(sorted(rest + [2 * i])), 1 if i % 2 else -1
    for k in range(1, i):
        if i + k > n:
            break
        yield tuple(sorted(rest + [i - k, i + k])), 2 if k % 2 else -2


def _check_step(before, after):
    if _order_key(after) <= _order_key(before):
        raise AssertionError(f"rewrite {before} -> {after} does not increase the monomial")


def largest_repeated(multiset):
    """Rewrite site used by the engine: the largest index occurring twice."""
    for a, b in zip(reversed(multiset), reversed(multiset[:-1])):
        if a == b:
            return a
    return None


def smallest_repeated(multiset):
    for a, b in zip(multiset, multiset[1:]):
        if a == b:
            return a
    return None


class _Kernel:
    """Memo table of e(i) * e(I) for one rank n, I square-free."""

    __slots__ = ("n", "_table", "_lock")

    def __init__(self, n):
        self.n = n
        self._table = {}
        self._lock = threading.Lock()

    def generator_times(self, i, mono):
        key = (i, mono)
        cached = self._table.get(key)
        if cached is not None:
            return cached

        if i > self.n:
            result = ()
        elif i not in mono:
            result = ((tuple(sorted(mono + (i,))), 1),)
        else:
            result = self._square(i, mono)

        if conf.engine.debug_rewrites:
            source = tuple(sorted(mono + (i,)))
            for target, _ in result:
                if target != source:
                    _check_step(source, target)

        with self._lock:
            result = self._table.setdefault(key, result)
            if len(self._table) % 100000 == 0:
                logger.debug("chow kernel n=%d holds %d products", self.n, len(self._table))
        return result

    def _square(self, i, mono):
        rest = tuple(j for j in mono if j != i)
        acc = defaultdict(int)
        for target, c in self.generator_times(2 * i, rest):
            acc[target] += c if i % 2 else -c
        for k in range(1, i):
            if i + k > self.n:
                break
            sign = 2 if k % 2 else -2
            for middle, c in self.generator_times(i + k, rest):
                for target, d in self.generator_times(i - k, middle):
                    acc[target] += sign * c * d
        return tuple((target, c) for target, c in acc.items() if c)


_kernels = {}
_kernels_lock = threading.Lock()


def _kernel(n):
    kernel = _kernels.get(n)
    if kernel is None:
        with _kernels_lock:
            kernel = _kernels.setdefault(n, _Kernel(n))
    return kernel


class ChowElement:
    """Finite integer combination of square-free monomials.

    Values are immutable; arithmetic returns new elements. In modulus mode
    every stored coefficient is a residue in ``[0, 2**K)``.
    """

    __slots__ = ("params", "terms")

    def __init__(self, params, terms=()):
        self.params = params
        if isinstance(terms, Mapping):
            terms = terms.items()
        clean = {}
        for mono, c in terms:
            mono = _square_free(mono, params.n)
            if mono is None:
                continue
            clean[mono] = clean.get(mono, 0) + c
        self.terms = _reduced(params, clean)

    @classmethod
    def _wrap(cls, params, terms):
        self = cls.__new__(cls)
        self.params = params
        self.terms = _reduced(params, terms)
        return self

    @classmethod
    def zero(cls, params):
        return cls._wrap(params, {})

    @classmethod
    def unit(cls, params):
        return cls._wrap(params, {(): 1})

    @classmethod
    def generator(cls, params, i):
        return cls.monomial(params, (i,))

    @classmethod
    def monomial(cls, params, indices):
        return cls(params, {tuple(indices): 1})

    @classmethod
    def point(cls, params):
        return cls.monomial(params, range(1, params.n + 1))

    @classmethod
    def from_text(cls, params, text):
        raw = {}
        text = text.strip()
        if text != "0":
            for chunk in text.split(" + "):
                match = _TERM_RE.fullmatch(chunk.strip())
                if match is None:
                    raise MalformedInputError(f"not a Chow term: {chunk!r}")
                indices = tuple(int(s) for s in match.group(2).split(",") if s)
                raw[indices] = raw.get(indices, 0) + int(match.group(1))
        return normalize(raw, params)

    @classmethod
    def from_json(cls, params, data):
        if isinstance(data, str):
            data = json.loads(data)
        raw = {}
        for item in data:
            indices = tuple(item["mono"])
            raw[indices] = raw.get(indices, 0) + int(item["coef"])
        return normalize(raw, params)

    def _sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda item: (sum(item[0]), _order_key(item[0]))
        )

    def to_text(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*e[{','.join(map(str, mono))}]" for mono, c in self._sorted_terms()
        )

    def to_json(self):
        return [{"mono": list(mono), "coef": str(c)} for mono, c in self._sorted_terms()]

    def degrees(self):
        return sorted({sum(mono) for mono in self.terms})

    def homogeneous_component(self, degree):
        return ChowElement._wrap(
            self.params,
            {mono: c for mono, c in self.terms.items() if sum(mono) == degree},
        )

    def times_generator(self, i):
        if i <= 0:
            raise MalformedInputError(f"generator index must be positive: {i}")
        kernel = _kernel(self.params.n)
        acc = defaultdict(int)
        for mono, c in self.terms.items():
            for target, d in kernel.generator_times(i, mono):
                acc[target] += c * d
        return ChowElement._wrap(self.params, acc)

    def times_monomial(self, mono):
        element = self
        for i in reversed(mono):
            element = element.times_generator(i)
        return element

    def _check(self, other):
        if not isinstance(other, ChowElement):
            return False
        if other.params != self.params:
            raise ParamsMismatchError(f"{self.params!r} vs {other.params!r}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        acc = dict(self.terms)
        for mono, c in other.terms.items():
            acc[mono] = acc.get(mono, 0) + c
        return ChowElement._wrap(self.params, acc)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowElement._wrap(
                self.params, {mono: c * other for mono, c in self.terms.items()}
            )
        if not self._check(other):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        return power(self, k)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ChowElement):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"<{__name__}.{type(self).__qualname__} n={self.params.n} {self.to_text()}>"


def _square_free(mono, n):
    mono = tuple(sorted(mono))
    for i in mono:
        if not isinstance(i, int) or i <= 0:
            raise MalformedInputError(f"generator index must be a positive integer: {i!r}")
    if len(set(mono)) != len(mono):
        raise MalformedInputError(f"monomial {mono} is not square-free, use normalize()")
    if mono and mono[-1] > n:
        return None
    return mono


def _reduced(params, terms):
    modulus = params.modulus
    if modulus is None:
        return {mono: c for mono, c in terms.items() if c}
    out = {}
    for mono, c in terms.items():
        c %= modulus
        if c:
            out[mono] = c
    return out


def normalize(raw, params, *, rewrite_site=largest_repeated):
    """Reduce a combination of index multisets to the square-free basis.

    Parameters
    ----------
    raw : Mapping[Iterable[int], int] or Iterable[Iterable[int]]
        multisets with coefficients (coefficient 1 for a bare iterable).
        Entries larger than n denote zero.
    params : RingParams
    rewrite_site : Callable[[tuple], Optional[int]]
        picks the repeated index rewritten next; any choice gives the same
        result.

    Returns
    -------
    ChowElement
    """
    if isinstance(raw, Mapping):
        items = raw.items()
    else:
        items = ((multiset, 1) for multiset in raw)

    debug = conf.engine.debug_rewrites
    n = params.n
    pending = defaultdict(int)
    for multiset, c in items:
        multiset = tuple(sorted(multiset))
        for i in multiset:
            if not isinstance(i, int) or i <= 0:
                raise MalformedInputError(
                    f"generator index must be a positive integer: {i!r}"
                )
        pending[multiset] += c

    result = defaultdict(int)
    while pending:
        multiset, c = pending.popitem()
        if c == 0 or (multiset and multiset[-1] > n):
            continue
        site = rewrite_site(multiset)
        if site is None:
            result[multiset] += c
            continue
        for target, k in _rewrite(multiset, site, n):
            if debug:
                _check_step(multiset, target)
            pending[target] += c * k
    return ChowElement._wrap(params, result)


def mul(a, b):
    """Product of two elements; iterates over the smaller operand's monomials."""
    if a.params != b.params:
        raise ParamsMismatchError(f"{a.params!r} vs {b.params!r}")
    if len(b.terms) > len(a.terms):
        a, b = b, a
    acc = defaultdict(int)
    for mono, c in b.terms.items():
        for target, d in a.times_monomial(mono).terms.items():
            acc[target] += c * d
    return ChowElement._wrap(a.params, acc)


def power(a, k):
    if not isinstance(k, int) or k < 0:
        raise MalformedInputError(f"exponent must be a nonnegative integer: {k!r}")
    result = ChowElement.unit(a.params)
    for _ in range(k):
        result = mul(result, a)
    return result


def two_adic_valuation(a):
    """Minimal 2-adic valuation of the coefficients; capped at K in modulus mode."""
    value = min((v2(c) for c in a.terms.values()), default=math.inf)
    bits = a.params.coeff_mode.bits
    return Valuation.from_minimum(value, cap=bits)


def congruent_mod_two_power(a, b, N):
    return two_adic_valuation(a - b).at_least(N)


def coefficient(a, mono):
    return a.terms.get(tuple(sorted(mono)), 0)


def degree_top(a):
    """Coefficient of the point class e([1, n])."""
    return coefficient(a, range(1, a.params.n + 1))


def _act(symbol, element):
    if symbol.kind == "E1":
        return element.times_generator(1)
    return element.times_generator(symbol.index)


def evaluate(expr, params, start=None):
    """Value of a Chow-side expression in ``E1`` and ``Ei(i)``.

    ``Ci(i)`` lives on the non-split variety; evaluate it through
    :func:`ogring.steenrod_restriction.res`.
    """
    stray = expr.kinds() - {"E1", "Ei"}
    if stray:
        raise ExpressionTypeError(
            f"cannot evaluate {sorted(stray)} in the split Chow ring: {expr}"
        )
    if start is None:
        start = ChowElement.unit(params)
    return apply(expr, start, _act)
