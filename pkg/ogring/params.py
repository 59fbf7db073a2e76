"""Ring parameters shared by every engine module."""
import logging
import re

from ogring.error import (
    MalformedInputError,
    ParameterError,
    ParseError,
    UnsupportedRankError,
)
from ogring.valuation import is_two_power, v2

__all__ = ["CoeffMode", "RingParams"]

logger = logging.getLogger(__name__)

_COEFF_RE = re.compile(r"exact|mod(?::(\d+))?")


class CoeffMode:
    """Coefficient ring: exact integers or residues modulo ``2**bits``.

    ``CoeffMode.modulus()`` without bits stands for ``2**(m+3)`` and is
    resolved once the rank is known.

    >>> CoeffMode.parse("mod:13")
    CoeffMode('mod:13')
    >>> str(CoeffMode.parse("exact"))
    'exact'
    """

    __slots__ = ("kind", "bits")

    def __init__(self, kind="exact", bits=None):
        if kind not in ("exact", "mod"):
            raise ParameterError(f"unknown coefficient mode {kind!r}")
        if kind == "exact" and bits is not None:
            raise ParameterError("exact coefficients take no modulus")
        if bits is not None and bits < 1:
            raise ParameterError(f"modulus exponent must be >= 1: {bits}")
        self.kind = kind
        self.bits = bits

    @classmethod
    def exact(cls):
        return cls("exact")

    @classmethod
    def modulus(cls, bits=None):
        return cls("mod", bits)

    @classmethod
    def parse(cls, s):
        match = _COEFF_RE.fullmatch(s.strip().lower())
        if match is None:
            raise ParseError(f"coefficient mode should be 'exact', 'mod' or 'mod:<K>': {s!r}")
        if match.group(0) == "exact":
            return cls.exact()
        bits = match.group(1)
        try:
            return cls.modulus(None if bits is None else int(bits))
        except ParameterError as exc:
            raise ParseError(str(exc)) from exc

    @property
    def is_exact(self):
        return self.kind == "exact"

    def resolve(self, m):
        if self.kind == "mod" and self.bits is None:
            if m is None:
                raise ParameterError("'mod' without an exponent needs n to be a power of 2")
            return CoeffMode.modulus(m + 3)
        return self

    def __eq__(self, other):
        if not isinstance(other, CoeffMode):
            return NotImplemented
        return (self.kind, self.bits) == (other.kind, other.bits)

    def __hash__(self):
        return hash((self.kind, self.bits))

    def __str__(self):
        if self.kind == "exact":
            return "exact"
        if self.bits is None:
            return "mod"
        return f"mod:{self.bits}"

    def __repr__(self):
        return f"CoeffMode({str(self)!r})"


class RingParams:
    """Rank-dependent constants of the split maximal orthogonal grassmannian.

    >>> p = RingParams(8)
    >>> p.dim_x, p.v_n, p.m, p.ind_x
    (36, 3, 4, 16)
    >>> RingParams(6).ind_x is None
    True
    """

    __slots__ = ("n", "dim_x", "v_n", "m", "ind_x", "coeff_mode")

    def __init__(self, n, coeff_mode=None):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise MalformedInputError(f"rank must be a positive integer: {n!r}")
        self.n = n
        self.dim_x = n * (n + 1) // 2
        self.v_n = v2(n)
        if is_two_power(n):
            self.m = n - 2 * self.v_n + 2
            self.ind_x = 1 << self.m
        else:
            self.m = None
            self.ind_x = None
        if coeff_mode is None:
            coeff_mode = CoeffMode.exact()
        self.coeff_mode = coeff_mode.resolve(self.m)

    @property
    def modulus(self):
        if self.coeff_mode.is_exact:
            return None
        return 1 << self.coeff_mode.bits

    def reduce(self, c):
        modulus = self.modulus
        if modulus is None:
            return c
        return c % modulus

    def with_coeff(self, coeff_mode):
        return RingParams(self.n, coeff_mode)

    @property
    def is_theorem_rank(self):
        return is_two_power(self.n) and self.n >= 8

    def require_theorem_rank(self):
        if not self.is_theorem_rank:
            raise UnsupportedRankError(
                f"n must be a power of 2 and at least 8, got {self.n}"
            )
        if not self.coeff_mode.is_exact and self.coeff_mode.bits < self.m + 3:
            raise UnsupportedRankError(
                f"modulus 2^{self.coeff_mode.bits} is below 2^(m+3) = 2^{self.m + 3}"
            )
        if self.n > 16:
            logger.warning("n = %d is beyond the desk-scale ranks 8 and 16", self.n)

    def __eq__(self, other):
        if not isinstance(other, RingParams):
            return NotImplemented
        return (self.n, self.coeff_mode) == (other.n, other.coeff_mode)

    def __hash__(self):
        return hash((self.n, self.coeff_mode))

    def __repr__(self):
        return f"<{__name__}.{type(self).__qualname__} n={self.n} coeff={self.coeff_mode}>"
