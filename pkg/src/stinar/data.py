"""Embedded datasets."""

import numpy as np

from .errors import InputFormatError

# annual Swedish population increase per thousand, 1750-1849
SWEDISH = (
    9, 12, 8, 12, 10, 10, 8, 2, 0, 7, 10, 9, 4, 1, 7, 5, 8,
    9, 5, 5, 6, 4, -9, -27, 12, 10, 10, 8, 8, 9, 14, 7, 4, 1,
    1, 2, 6, 7, 7, -2, -1, 7, 12, 10, 10, 4, 9, 10, 9, 5, 4,
    3, 7, 7, 6, 8, 3, 4, -5, -14, 1, 6, 3, 2, 6, 1, 13, 10,
    10, 6, 9, 10, 13, 16, 14, 16, 12, 8, 7, 6, 9, 4, 7, 12, 8,
    14, 11, 5, 5, 5, 10, 11, 11, 9, 12, 13, 8, 6, 10, 13,
)
SWEDISH_YEARS = (1750, 1849)

BUILTIN = {"swedish": SWEDISH}


def swedish():
    return np.array(SWEDISH, dtype=np.int64)


def load_builtin(name):
    key = name.split(":", 1)[1] if name.startswith("builtin:") else name
    try:
        return np.array(BUILTIN[key], dtype=np.int64)
    except KeyError:
        raise InputFormatError(f"unknown builtin dataset {name!r}; available: {sorted(BUILTIN)}") from None
