"""2-adic valuations shared by the Chow and Rees engines."""
import functools as fnt
import math

from ogring.error import PrecisionError

__all__ = ["v2", "v2_factorial", "is_two_power", "Valuation"]


def v2(c):
    """Exponent of the largest power of 2 dividing ``c``; ``math.inf`` for 0.

    >>> v2(12), v2(-8), v2(1)
    (2, 3, 0)
    >>> v2(0)
    inf
    """
    if c == 0:
        return math.inf
    return (c & -c).bit_length() - 1


def v2_factorial(j):
    """v2(j!) by Legendre's formula."""
    if j < 0:
        raise ValueError(f"negative factorial argument: {j}")
    return j - bin(j).count("1")


def is_two_power(n):
    return n > 0 and n & (n - 1) == 0


@fnt.total_ordering
class Valuation:
    """A valuation, possibly only known as a lower bound.

    Elements carried at finite precision (a modulus 2^K, or a Rees element
    truncated at I^N) only determine their valuation up to that cap. A capped
    ``Valuation`` stores the cap and means "at least this much".

    >>> Valuation(3) >= 2
    True
    >>> Valuation(5, capped=True)
    Valuation(>=5)
    """

    __slots__ = ("value", "capped")

    def __init__(self, value, capped=False):
        self.value = value
        self.capped = capped

    @classmethod
    def from_minimum(cls, value, cap=None):
        if cap is not None and value >= cap:
            return cls(cap, capped=True)
        return cls(value)

    @property
    def is_infinite(self):
        return self.value == math.inf

    def at_least(self, bound):
        """Decide ``valuation >= bound``.

        Raises
        ------
        PrecisionError
            the element was carried at a precision below ``bound``.
        """
        if self.value >= bound:
            return True
        if self.capped:
            raise PrecisionError(
                f"valuation known only as >= {self.value}, cannot decide >= {bound}"
            )
        return False

    def to_json(self):
        if self.capped:
            return f">={self.value}"
        if self.is_infinite:
            return "inf"
        return self.value

    def _other_value(self, other):
        if isinstance(other, Valuation):
            return other.value
        return other

    def __eq__(self, other):
        return self.value == self._other_value(other)

    def __lt__(self, other):
        return self.value < self._other_value(other)

    def __hash__(self):
        return hash(self.value)

    def __add__(self, k):
        return Valuation(self.value + k, self.capped)

    def __repr__(self):
        if self.capped:
            return f"Valuation(>={self.value})"
        return f"Valuation({self.value})"
