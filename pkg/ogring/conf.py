"""Grouped, frozen configuration for the engine and the verifier.

>>> import ogring
>>> conf = ogring.Conf()
>>> with conf.declare_group('verify') as verify:
...     verify.threads = 1
...     verify.seed = ogring.prop(7, desc='sampling seed')
>>> conf.verify.threads
1

Values are read-only except inside ``Conf.mutate_locally()``; settings
files, environment variables and click flags write through their own
entry points.
"""
import logging
import os
from contextlib import contextmanager
from pathlib import Path

import ogring.prop_type
from ogring.error import (
    ConfGroupExistsError,
    FrozenConfGroupError,
    FrozenConfPropError,
    ParameterError,
    UnknownConfError,
)

__all__ = ["Conf", "ConfGroup", "ConfProperty", "prop"]

logger = logging.getLogger(__name__)


class ConfProperty:
    """One declared setting.

    Parameters
    ----------
    default : Any
        value until something overrides it; also picks the property type
        when ``prop_type`` is omitted
    desc : str
        help text, shown by ``--help``
    prop_type : ogring.prop_type.PropertyType, optional
        parser for values given as strings
    envvar : str, optional
        environment variable read by ``Conf.load_envvars``
    """

    __slots__ = ("default", "value", "prop_type", "desc", "envvar")

    def __init__(self, default, *, desc="", prop_type=None, envvar=None):
        if prop_type is None:
            prop_type = ogring.prop_type.of_value(default)
            if prop_type is None:
                raise ParameterError(f"cannot infer a property type from {default!r}")
        elif not isinstance(prop_type, ogring.prop_type.PropertyType):
            raise ParameterError(f"prop_type must be a PropertyType, got {prop_type!r}")
        self.default = default
        self.value = default
        self.prop_type = prop_type
        self.desc = desc
        self.envvar = envvar

    def coerce(self, value):
        """Parse ``value`` when it is a string standing for a non-string type."""
        if isinstance(value, str) and self.prop_type.python_type is not str:
            return self.prop_type.parse(value)
        return value

    def __repr__(self):
        return (
            f"<{__name__}.{type(self).__qualname__} "
            f"value={self.value!r} default={self.default!r} type={self.prop_type}>"
        )


def prop(default, *, desc="", prop_type=None, envvar=None):
    """Declare a property with more than a default value.

    >>> conf = Conf()
    >>> conf.declare_group('verify', threads=prop(1, envvar='OGRING_THREADS'))
    >>> conf.verify.threads
    1
    """
    return ConfProperty(default, desc=desc, prop_type=prop_type, envvar=envvar)


class ConfGroup:
    __slots__ = ("_conf", "_name", "_properties")

    def __init__(self, conf, name, properties):
        object.__setattr__(self, "_conf", conf)
        object.__setattr__(self, "_name", name)
        object.__setattr__(self, "_properties", properties)

    def get_prop(self, name):
        try:
            return self._properties[name]
        except KeyError:
            raise UnknownConfError(f"no property {name!r} in group {self._name!r}") from None

    def parse_prop(self, name, text):
        return self.get_prop(name).prop_type.parse(text)

    def as_dict(self):
        return {name: p.value for name, p in self._properties.items()}

    def __getitem__(self, name):
        return self.get_prop(name).value

    def __getattr__(self, name):
        return self[name]

    def __setitem__(self, name, value):
        p = self.get_prop(name)
        if self._conf._frozen:
            raise FrozenConfPropError(
                f"{self._name}.{name} is read-only; change it in a settings file, "
                "an environment variable, or inside Conf.mutate_locally()"
            )
        p.value = value

    def __setattr__(self, name, value):
        self[name] = value

    def __dir__(self):
        return list(self._properties)

    def __repr__(self):
        return f"<{__name__}.{type(self).__qualname__} {self._name} {self.as_dict()}>"


class _GroupDeclaration:
    """Collects ``name = default`` assignments, registers the group on exit."""

    __slots__ = ("_conf", "_name", "_properties")

    def __init__(self, conf, name):
        object.__setattr__(self, "_conf", conf)
        object.__setattr__(self, "_name", name)
        object.__setattr__(self, "_properties", {})

    def __setattr__(self, name, default):
        if not isinstance(default, ConfProperty):
            default = ConfProperty(default)
        self._properties[name] = default

    def __getattr__(self, name):
        try:
            return self._properties[name]
        except KeyError:
            raise AttributeError(name) from None

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            self._conf._register(self._name, self._properties)


class _SettingsGroupWriter:
    __slots__ = ("_conf", "_group")

    def __init__(self, conf, group):
        object.__setattr__(self, "_conf", conf)
        object.__setattr__(self, "_group", group)

    def __setattr__(self, name, value):
        self._conf._assign(self._group, name, value)


class _SettingsWriter:
    """The ``c`` object of a settings file: ``c.<group>.<prop> = value``."""

    __slots__ = ("_conf",)

    def __init__(self, conf):
        object.__setattr__(self, "_conf", conf)

    def __getattr__(self, group):
        return _SettingsGroupWriter(self._conf, group)

    def __setattr__(self, name, value):
        raise TypeError(f"settings name a group and a property, e.g. c.verify.{name} = ...")


class Conf:
    """Named groups of frozen properties.

    Values given for groups that are not declared yet (from a settings file
    loaded early) wait and apply when the group is declared.

    >>> conf = Conf()
    >>> conf.declare_group('verify', threads=2)
    >>> conf.verify.threads = 8
    Traceback (most recent call last):
        ...
    ogring.error.FrozenConfPropError: verify.threads is read-only; change it in a settings file, an environment variable, or inside Conf.mutate_locally()
    """  # noqa

    __slots__ = ("_frozen", "_groups", "_pending")

    def __init__(self):
        object.__setattr__(self, "_frozen", True)
        object.__setattr__(self, "_groups", {})
        object.__setattr__(self, "_pending", {})

    def declare_group(self, name, **defaults):
        """Declare group ``name``.

        With keyword defaults the group is registered at once; without them
        a context manager is returned and the group is registered when the
        block ends.

        >>> conf = Conf()
        >>> with conf.declare_group('engine') as engine:
        ...     engine.debug_rewrites = False
        >>> conf.declare_group('verify', threads=2, seed=7)
        >>> conf.engine.debug_rewrites, conf.verify.seed
        (False, 7)
        """
        if name in self._groups:
            raise ConfGroupExistsError(f"configuration group {name!r} already exists")
        declaration = _GroupDeclaration(self, name)
        if not defaults:
            return declaration
        with declaration:
            for key, default in defaults.items():
                setattr(declaration, key, default)

    def _register(self, name, properties):
        if name in self._groups:
            raise ConfGroupExistsError(f"configuration group {name!r} already exists")
        self._groups[name] = ConfGroup(self, name, properties)
        for key, value in self._pending.pop(name, {}).items():
            self._assign(name, key, value)

    def _assign(self, group, name, value):
        if group not in self._groups:
            self._pending.setdefault(group, {})[name] = value
            return
        properties = self._groups[group]._properties
        if name not in properties:
            logger.warning("ignoring undeclared property %s.%s", group, name)
            return
        properties[name].value = properties[name].coerce(value)

    def _iter_props(self):
        for group_name, group in self._groups.items():
            for name, p in group._properties.items():
                yield group_name, name, p

    @contextmanager
    def mutate_locally(self):
        """Allow assignments inside the block and undo all changes after it.

        >>> conf = Conf()
        >>> conf.declare_group('verify', threads=1)
        >>> with conf.mutate_locally():
        ...     conf.verify.threads = 4
        >>> conf.verify.threads
        1
        """
        groups = dict(self._groups)
        pending = {group: dict(values) for group, values in self._pending.items()}
        values = {(g, name): p.value for g, name, p in self._iter_props()}
        object.__setattr__(self, "_frozen", False)
        try:
            yield
        finally:
            object.__setattr__(self, "_frozen", True)
            object.__setattr__(self, "_groups", groups)
            object.__setattr__(self, "_pending", pending)
            for g, name, p in self._iter_props():
                p.value = values[g, name]

    def load_file(self, path):
        """Run a python settings file.

        The file writes through ``c``::

            from ogring import c
            c.verify.threads = 4
            c.engine.coeff = 'mod:13'
        """
        path = Path(path)
        source = path.read_text()
        logger.info("loading settings file %s", path)
        ogring.c = _SettingsWriter(self)
        try:
            exec(compile(source, str(path), "exec"), {"__file__": str(path)})
        finally:
            del ogring.c

    def load_envvars(self, prefix):
        """Apply environment variables.

        ``<prefix>__<group>__<prop>`` sets any declared property, e.g.
        ``OGRING__verify__seed=9``; a property declared with ``envvar=``
        also reads that variable, e.g. ``OGRING_THREADS=4``. Values are
        parsed by the property type.
        """
        head = prefix + "__"
        for key, text in os.environ.items():
            if key.startswith(head):
                group, _, name = key[len(head):].partition("__")
                self._assign(group, name, self.parse_prop(group, name, text))
        for group, name, p in self._iter_props():
            if p.envvar is not None and p.envvar in os.environ:
                logger.debug("%s sets %s.%s", p.envvar, group, name)
                p.value = p.prop_type.parse(os.environ[p.envvar])

    def get_prop(self, group, name):
        return self[group].get_prop(name)

    def parse_prop(self, group, name, text):
        return self[group].parse_prop(name, text)

    def click_options(self, cmd_func=None, *, flat=False):
        """Add one click option per property to ``cmd_func``.

        Options are named ``--<group>-<prop>``, or ``--<prop>`` with
        ``flat=True``. A flag sets its property only when it is given, even
        with the default value; otherwise the value loaded before the command
        runs is kept.
        """
        import click

        if cmd_func is None:
            return lambda func: self.click_options(func, flat=flat)

        for group, name, p in reversed(list(self._iter_props())):
            dashed = name.replace("_", "-")
            option = f"--{dashed}" if flat else f"--{group}-{dashed}"
            cmd_func = click.option(
                option,
                default=p.default,
                type=p.prop_type.click_param_type,
                callback=self._click_callback(group, name),
                expose_value=False,
                show_default=True,
                help=p.desc,
            )(cmd_func)
        return cmd_func

    def _click_callback(self, group, name):
        from click.core import ParameterSource

        def callback(ctx, param, value):
            if ctx.get_parameter_source(param.name) is not ParameterSource.DEFAULT:
                self._groups[group]._properties[name].value = value

        return callback

    def __contains__(self, group):
        return group in self._groups

    def __getitem__(self, group):
        try:
            return self._groups[group]
        except KeyError:
            raise UnknownConfError(f"unknown configuration group {group!r}") from None

    def __getattr__(self, group):
        return self[group]

    def __setitem__(self, group, value):
        raise FrozenConfGroupError(
            f"cannot assign group {group!r}; declare groups with Conf.declare_group()"
        )

    def __setattr__(self, name, value):
        self[name] = value

    def __dir__(self):
        return list(object.__dir__(self)) + list(self._groups)

    def __repr__(self):
        return f"<{__name__}.{type(self).__qualname__} groups={list(self._groups)}>"
