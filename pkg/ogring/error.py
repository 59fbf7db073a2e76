"""Exceptions raised by ogring. All derive from :class:`OgringError`."""


class OgringError(Exception):
    pass


# inputs


class MalformedInputError(OgringError, ValueError):
    """Index <= 0, a sequence that is not a strict partition, bad text or JSON."""


class ParamsMismatchError(OgringError, ValueError):
    """Operands live in rings with different parameters."""


class IndexRangeError(OgringError, IndexError):
    pass


class ExpressionTypeError(OgringError, TypeError):
    """An expression mixes K-side and Chow-side symbols."""


class UnsupportedRankError(OgringError, ValueError):
    """A theorem computation was asked for n that is not a power of 2 >= 8."""


class ParameterError(OgringError, ValueError):
    """Inconsistent arguments: a coefficient mode, a property declaration."""


class ParseError(OgringError, ValueError):
    """A setting given as text could not be parsed."""


# arithmetic


class InconsistencyError(OgringError, ArithmeticError):
    """A coordinate extraction left a nonzero remainder."""


class ValuationTooSmallError(OgringError, ArithmeticError):
    pass


class PrecisionError(OgringError, ArithmeticError):
    """The answer depends on terms dropped by the element's precision."""


class NotDivisibleError(OgringError, ArithmeticError):
    pass


# configuration


class ConfError(OgringError):
    pass


class UnknownConfError(ConfError, AttributeError, KeyError):
    pass


class FrozenConfPropError(ConfError, TypeError):
    pass


class FrozenConfGroupError(ConfError, TypeError):
    pass


class ConfGroupExistsError(ConfError, ValueError):
    pass
