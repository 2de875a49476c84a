"""Seeded generator construction.

Every random draw in the package goes through a :class:`numpy.random.Generator`
passed in explicitly. Child streams are derived from ``(seed, *stream)`` with
:class:`numpy.random.SeedSequence` spawn keys, so the same key always gives the
same draws no matter which process or in which order it is created.
"""

import numpy as np


def make_rng(seed=None, *stream):
    """Return a generator for ``seed`` and an optional stream index tuple."""
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        return np.random.default_rng()
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.default_rng(ss)
