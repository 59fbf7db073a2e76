"""Index families cutting [1, n] for the theorem-rank computations.

>>> fam = IndexFamilies(16)
>>> fam.j
(2, 3, 11, 12, 13, 14, 15)
>>> fam.e_power + sum(fam.j) == fam.params.dim_x - 3
True
"""
from ogring.error import UnsupportedRankError
from ogring.params import RingParams

__all__ = ["IndexFamilies", "interval"]


def interval(a, b):
    """The integers a, ..., b as a tuple; empty when b < a."""
    return tuple(range(a, b + 1))


class IndexFamilies:
    """Named index sets of a 2-power rank n >= 8.

    Attributes
    ----------
    i0 : tuple
        [n/2 + 1, n - 1], split as ``i1 + i2 + i3``.
    i3bar : tuple
        ``i3`` with n appended.
    i3prime : tuple or None
        (6, 7) at n = 8, where it takes the role of ``i3`` in ``j``.
    i4 : tuple
        [6, n/4 + 1] without the 2-powers 2^3, ..., 2^(v(n)-2).
    j, j_prime : tuple
        index sets of the theorem element and of its companion (3 swapped
        for 4).
    """

    __slots__ = (
        "n",
        "params",
        "i0",
        "i1",
        "i2",
        "i3",
        "i3bar",
        "i3prime",
        "i4",
        "j",
        "j_prime",
    )

    def __init__(self, n):
        params = RingParams(n)
        if not params.is_theorem_rank:
            raise UnsupportedRankError(f"n must be a power of 2 and at least 8, got {n}")
        self.n = n
        self.params = params
        self.i0 = interval(n // 2 + 1, n - 1)
        self.i1 = () if n == 8 else interval(n // 2 + 1, 5 * n // 8)
        self.i2 = interval(5 * n // 8 + 1, 6 * n // 8 - 2)
        self.i3 = interval(6 * n // 8 - 1, n - 1)
        self.i3bar = self.i3 + (n,)
        self.i3prime = (6, 7) if n == 8 else None
        skipped = {1 << k for k in range(3, params.v_n - 1)}
        self.i4 = tuple(i for i in interval(6, n // 4 + 1) if i not in skipped)
        self.j = self.theorem_set(3)
        self.j_prime = self.theorem_set(4)

    def theorem_set(self, second):
        """{2, second} together with ``upper_block`` and ``i4``, sorted."""
        return tuple(sorted({2, second, *self.upper_block, *self.i4}))

    @property
    def upper_block(self):
        """``i3prime`` at n = 8, ``i3`` otherwise."""
        return self.i3prime if self.n == 8 else self.i3

    @property
    def e_power(self):
        """Exponent n^2/4 - 1 of e (or f(1)) in the theorem element."""
        return self.n * self.n // 4 - 1

    @property
    def lower_g(self):
        """[n/4 + 2, n/2 - 1]."""
        return interval(self.n // 4 + 2, self.n // 2 - 1)

    @property
    def top_f(self):
        """[n/2, n]."""
        return interval(self.n // 2, self.n)

    @property
    def expected_j_size(self):
        return self.n // 2 - self.params.v_n + 3

    def as_dict(self):
        out = {
            name: list(getattr(self, name))
            for name in ("i0", "i1", "i2", "i3", "i3bar", "i4", "j", "j_prime")
        }
        out["i3prime"] = None if self.i3prime is None else list(self.i3prime)
        return out

    def __repr__(self):
        return f"<{__name__}.{type(self).__qualname__} n={self.n} J={self.j}>"
