from .conf import Conf, prop
from .error import (
    ConfError,
    ConfGroupExistsError,
    FrozenConfGroupError,
    FrozenConfPropError,
    OgringError,
    ParameterError,
    ParseError,
    UnknownConfError,
    UnsupportedRankError,
)
from .params import CoeffMode, RingParams
from . import prop_type

__version__ = "0.1.0"

__all__ = [
    "Conf",
    "prop",
    "prop_type",
    "CoeffMode",
    "RingParams",
    "OgringError",
    "UnsupportedRankError",
    "ConfError",
    "FrozenConfPropError",
    "FrozenConfGroupError",
    "UnknownConfError",
    "ConfGroupExistsError",
    "ParameterError",
    "ParseError",
]
