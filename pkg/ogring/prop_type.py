"""Parsers that turn environment and command-line strings into setting values.

Every declared property has one; ``of_value`` picks it from the default.
"""
import re

from ogring.error import ParseError
from ogring.params import CoeffMode

__all__ = ["of_value", "PropertyType", "String", "Integer", "Bool", "CoeffModeType"]

_INT_RE = re.compile(r"[+-]?\d+")
_TRUE = frozenset(("1", "t", "true", "y", "yes", "on"))
_FALSE = frozenset(("0", "f", "false", "n", "no", "off"))

_REGISTRY = {}


class PropertyType:
    """Base of the property types.

    Subclasses set ``name`` and ``python_type`` and implement ``parse``.
    Instances are stateless, so any two of the same class compare equal.
    """

    __slots__ = ()

    name = None
    python_type = None

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if cls.python_type is not None:
            _REGISTRY[cls.python_type] = cls

    def parse(self, s):
        raise NotImplementedError

    @property
    def click_param_type(self):
        import click

        prop_type = self

        class ParamType(click.ParamType):
            name = prop_type.name

            def convert(self, value, param, ctx):
                if not isinstance(value, str):
                    return value
                try:
                    return prop_type.parse(value)
                except ParseError as exc:
                    self.fail(str(exc), param, ctx)

        return ParamType()

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(type(self))

    def __repr__(self):
        return f"<{__name__}.{type(self).__qualname__}>"

    def __str__(self):
        return self.name


class String(PropertyType):
    __slots__ = ()
    name = "str"
    python_type = str

    def parse(self, s):
        return s

    @property
    def click_param_type(self):
        import click

        return click.STRING


class Integer(PropertyType):
    __slots__ = ()
    name = "int"
    python_type = int

    def parse(self, s):
        if not _INT_RE.fullmatch(s.strip()):
            raise ParseError(f"expected an integer, got {s!r}")
        return int(s)

    @property
    def click_param_type(self):
        import click

        return click.INT


class Bool(PropertyType):
    __slots__ = ()
    name = "bool"
    python_type = bool

    def parse(self, s):
        word = s.strip().lower()
        if word in _TRUE:
            return True
        if word in _FALSE:
            return False
        raise ParseError(f"expected one of {sorted(_TRUE | _FALSE)}, got {s!r}")

    @property
    def click_param_type(self):
        import click

        return click.BOOL


class CoeffModeType(PropertyType):
    """``exact``, ``mod`` or ``mod:<K>``"""

    __slots__ = ()
    name = "coeff"
    python_type = CoeffMode

    def parse(self, s):
        return CoeffMode.parse(s)


def of_value(value):
    """Property type for ``value``'s exact type, or None."""
    cls = _REGISTRY.get(type(value))
    return None if cls is None else cls()
