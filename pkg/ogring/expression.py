"""Generator expressions: the input language of both rings.

An expression is a tree over the K-side symbols ``F(i)``, ``G(i)``, ``T`` and
the Chow-side symbols ``E1``, ``Ei(i)``, ``Ci(i)``, with integer literals,
sums, products and powers. Python operators build trees:

>>> str(F(1) ** 2 * G(3) + 2 * T)
'(F(1)^2*G(3) + 2*t)'

Rings never multiply two arbitrary elements. They evaluate an expression by
applying it, as a multiplication operator, to an element (normally the unit);
see :func:`apply`.
"""
import functools as fnt
import operator

from ogring.error import ExpressionTypeError, MalformedInputError

__all__ = [
    "Expression",
    "Int",
    "Symbol",
    "Sum",
    "Product",
    "Power",
    "F",
    "G",
    "T",
    "E1",
    "Ei",
    "Ci",
    "product",
    "total",
    "f_set",
    "g_set",
    "e_set",
    "c_set",
    "apply",
    "substitute",
]

K_SIDE = frozenset({"F", "G", "T"})
CHOW_SIDE = frozenset({"E1", "Ei", "Ci"})


def _wrap(value):
    if isinstance(value, Expression):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Int(value)
    return NotImplemented


class Expression:
    __slots__ = ()

    def __add__(self, other):
        other = _wrap(other)
        if other is NotImplemented:
            return other
        return Sum((self, other))

    def __radd__(self, other):
        other = _wrap(other)
        if other is NotImplemented:
            return other
        return Sum((other, self))

    def __sub__(self, other):
        other = _wrap(other)
        if other is NotImplemented:
            return other
        return Sum((self, Product((Int(-1), other))))

    def __rsub__(self, other):
        other = _wrap(other)
        if other is NotImplemented:
            return other
        return Sum((other, Product((Int(-1), self))))

    def __neg__(self):
        return Product((Int(-1), self))

    def __mul__(self, other):
        other = _wrap(other)
        if other is NotImplemented:
            return other
        return Product((self, other))

    def __rmul__(self, other):
        other = _wrap(other)
        if other is NotImplemented:
            return other
        return Product((other, self))

    def __pow__(self, exponent):
        return Power(self, exponent)

    def children(self):
        return ()

    def symbols(self):
        """Yield every symbol leaf of the tree."""
        stack = [self]
        while stack:
            node = stack.pop()
            if isinstance(node, Symbol):
                yield node
            else:
                stack.extend(node.children())

    def kinds(self):
        return frozenset(symbol.kind for symbol in self.symbols())

    def require_side(self, side):
        allowed = K_SIDE if side == "K" else CHOW_SIDE
        stray = self.kinds() - allowed
        if stray:
            raise ExpressionTypeError(
                f"{side}-side evaluation got symbols {sorted(stray)} in {self}"
            )

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        if not isinstance(other, Expression):
            return NotImplemented
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return f"<{__name__}.{type(self).__qualname__} {self}>"


class Int(Expression):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def _key(self):
        return self.value

    def __str__(self):
        return str(self.value)


class Symbol(Expression):
    __slots__ = ("kind", "index")

    _NAMES = {"F": "F", "G": "G", "T": "t", "E1": "e", "Ei": "e", "Ci": "c"}

    def __init__(self, kind, index=None):
        if kind not in K_SIDE | CHOW_SIDE:
            raise MalformedInputError(f"unknown symbol kind {kind!r}")
        if (index is None) != (kind in ("T", "E1")):
            raise MalformedInputError(f"symbol {kind} has a wrong index: {index!r}")
        if index is not None and (
            not isinstance(index, int) or isinstance(index, bool) or index <= 0
        ):
            raise MalformedInputError(f"generator index must be positive: {index!r}")
        self.kind = kind
        self.index = index

    def _key(self):
        return (self.kind, self.index)

    def __str__(self):
        name = self._NAMES[self.kind]
        if self.index is None:
            return name
        return f"{name}({self.index})"


class Sum(Expression):
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = tuple(_wrap(term) for term in terms)

    def children(self):
        return self.terms

    def _key(self):
        return self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return "(" + " + ".join(map(str, self.terms)) + ")"


class Product(Expression):
    __slots__ = ("factors",)

    def __init__(self, factors):
        self.factors = tuple(_wrap(factor) for factor in factors)

    def children(self):
        return self.factors

    def _key(self):
        return self.factors

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(map(str, self.factors))


class Power(Expression):
    __slots__ = ("base", "exponent")

    def __init__(self, base, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise MalformedInputError(f"exponent must be a nonnegative integer: {exponent!r}")
        self.base = _wrap(base)
        self.exponent = exponent

    def children(self):
        return (self.base,)

    def _key(self):
        return (self.base, self.exponent)

    def __str__(self):
        return f"{self.base}^{self.exponent}"


def F(i):
    return Symbol("F", i)


def G(i):
    return Symbol("G", i)


def Ei(i):
    return Symbol("Ei", i)


def Ci(i):
    return Symbol("Ci", i)


T = Symbol("T")
E1 = Symbol("E1")


def product(factors):
    factors = tuple(factors)
    if len(factors) == 1:
        return factors[0]
    return Product(factors)


def total(terms):
    return Sum(tuple(terms))


def f_set(indices):
    return product(F(i) for i in sorted(indices))


def g_set(indices):
    return product(G(i) for i in sorted(indices))


def e_set(indices):
    return product(Ei(i) for i in sorted(indices))


def c_set(indices):
    return product(Ci(i) for i in sorted(indices))


def apply(expr, element, act):
    """Multiply ``element`` by ``expr``.

    ``act(symbol, element)`` multiplies by a single symbol; scalars, sums,
    products and powers are handled here. Elements must support ``+`` and
    multiplication by ``int``.
    """
    if isinstance(expr, Int):
        return element * expr.value
    if isinstance(expr, Symbol):
        return act(expr, element)
    if isinstance(expr, Sum):
        if not expr.terms:
            return element * 0
        return fnt.reduce(
            operator.add, (apply(term, element, act) for term in expr.terms)
        )
    if isinstance(expr, Product):
        for factor in reversed(expr.factors):
            element = apply(factor, element, act)
        return element
    if isinstance(expr, Power):
        for _ in range(expr.exponent):
            element = apply(expr.base, element, act)
        return element
    raise ExpressionTypeError(f"not an expression: {expr!r}")


def substitute(expr, replace):
    """Rebuild ``expr`` with every symbol replaced by ``replace(symbol)``."""
    if isinstance(expr, Int):
        return expr
    if isinstance(expr, Symbol):
        return _wrap(replace(expr))
    if isinstance(expr, Sum):
        return Sum(substitute(term, replace) for term in expr.terms)
    if isinstance(expr, Product):
        return Product(substitute(factor, replace) for factor in expr.factors)
    if isinstance(expr, Power):
        return Power(substitute(expr.base, replace), expr.exponent)
    raise ExpressionTypeError(f"not an expression: {expr!r}")
