"""Chern-class expressions on X and their restrictions to the split form.

``c(i)`` restricts to ``2 e(i)`` and ``e`` to ``e(1)``. The linear part of
the integral Steenrod representative is

    S(i) = sum_{j=0}^{i-1} binom(i-1, j) c(i+j)

with c(k) = 0 for k > n.
"""
import logging
import math

from ogring.chow_ring import degree_top, evaluate
from ogring.error import (
    IndexRangeError,
    NotDivisibleError,
    PrecisionError,
    UnsupportedRankError,
)
from ogring.expression import E1, Ci, Ei, Int, product, substitute, total
from ogring.valuation import is_two_power, v2

__all__ = [
    "shat",
    "shat_set",
    "total_steenrod_e",
    "res",
    "torsion_index",
    "deg_over_index",
]

logger = logging.getLogger(__name__)


def shat(i, n):
    """
    >>> str(shat(7, 8))
    '(1*c(7) + 6*c(8))'
    """
    if not 1 <= i <= n:
        raise IndexRangeError(f"S({i}) needs 1 <= i <= {n}")
    return total(
        Int(math.comb(i - 1, j)) * Ci(i + j) for j in range(i) if i + j <= n
    )


def shat_set(indices, n):
    """Product of ``shat(l, n)`` over ``indices``; the empty set gives 1."""
    return product(shat(l, n) for l in sorted(indices))


def total_steenrod_e(k):
    """``(e + e^2)^k``, the total Steenrod operation applied to ``e^k``."""
    return (E1 + E1 ** 2) ** k


def _restrict(symbol):
    if symbol.kind == "Ci":
        return Int(2) * Ei(symbol.index)
    return symbol


def res(expr, params):
    """Restriction to the Chow ring of the split form.

    Returns
    -------
    ChowElement
    """
    return evaluate(substitute(expr, _restrict), params)


def torsion_index(n):
    """
    >>> torsion_index(8), torsion_index(16)
    (16, 1024)
    """
    if not is_two_power(n):
        raise UnsupportedRankError(f"the torsion index formula needs a 2-power rank, got {n}")
    return 1 << (n - 2 * v2(n) + 2)


def deg_over_index(a):
    """(coefficient of the point class) / ind X, modulo 2.

    Raises
    ------
    NotDivisibleError
        the point coefficient is not a multiple of ind X.
    PrecisionError
        modulus coefficients too coarse to see 2 ind X.
    """
    params = a.params
    index = torsion_index(params.n)
    bits = params.coeff_mode.bits
    if bits is not None and (1 << bits) < 2 * index:
        raise PrecisionError(f"mod 2^{bits} cannot resolve 2 ind X = {2 * index}")
    top = degree_top(a)
    quotient, rest = divmod(top, index)
    if rest:
        raise NotDivisibleError(f"point coefficient {top} is not divisible by ind X = {index}")
    return quotient % 2
