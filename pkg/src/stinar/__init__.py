"""Skew true INAR(1) processes on the integers."""

from .errors import DegenerateSeriesError, InputFormatError, ParameterError, StinarError, UnsupportedConfigurationError
from .params import StinarParams, TinarParams, alpha_bound
from .rng import make_rng

__version__ = "0.1.0"

__all__ = [
    "DegenerateSeriesError",
    "InputFormatError",
    "ParameterError",
    "StinarError",
    "StinarParams",
    "TinarParams",
    "UnsupportedConfigurationError",
    "alpha_bound",
    "make_rng",
]
