"""Skew discrete Laplace (SDL) distribution on the integers.

``Z ~ SDL(mu1, mu2)`` is the difference ``G1 - G2`` of two independent
geometric variables on ``{0, 1, ...}`` with means ``mu1`` and ``mu2``.
Its pmf is

    p(k) = (1 + mu1 + mu2)^-1 * (mu1 / (1 + mu1))^k        for k >= 0
    p(k) = (1 + mu1 + mu2)^-1 * (mu2 / (1 + mu2))^|k|      for k < 0

Setting ``mu2 = 0`` yields the plain geometric law, which is how the
geometric marginal of an NGINAR(1) process is represented here.
"""

from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class SdlParams:
    """Means of the positive-side and negative-side geometric components."""

    mu1: float
    mu2: float

    def __post_init__(self):
        check_sdl(self.mu1, self.mu2)

    @classmethod
    def geometric(cls, mu):
        """Degenerate SDL(mu, 0), i.e. a geometric law on the naturals."""
        obj = object.__new__(cls)
        check_sdl(mu, 0.0, allow_geometric=True)
        object.__setattr__(obj, "mu1", float(mu))
        object.__setattr__(obj, "mu2", 0.0)
        return obj


def check_sdl(mu1, mu2, allow_geometric=False):
    if not (np.isfinite(mu1) and np.isfinite(mu2)):
        raise ParameterError(f"SDL means must be finite, got mu1={mu1}, mu2={mu2}")
    if mu1 <= 0:
        raise ParameterError(f"mu1 must be > 0, got {mu1}")
    if mu2 < 0 or (mu2 == 0 and not allow_geometric):
        raise ParameterError(f"mu2 must be > 0, got {mu2}")


def _ratios(mu1, mu2):
    return mu1 / (1.0 + mu1), mu2 / (1.0 + mu2), 1.0 + mu1 + mu2


def sdl_pmf(k, mu1, mu2):
    """Probability mass at ``k`` (scalar or array of integers)."""
    check_sdl(mu1, mu2, allow_geometric=True)
    r1, r2, c = _ratios(mu1, mu2)
    k = np.asarray(k)
    # r2**0 must stay 1 when mu2 == 0; np.power(0.0, 0) is 1 already
    out = np.where(k >= 0, np.power(r1, np.abs(k)), np.power(r2, np.abs(k))) / c
    return out if out.ndim else float(out)


def sdl_cdf(k, mu1, mu2):
    """``P(Z <= k)``.

    Uses the tail sums ``P(Z > k) = mu1^(k+1) / ((1+mu1)^k (1+mu1+mu2))`` for
    ``k >= 0`` and ``P(Z <= k) = mu2^|k| / ((1+mu2)^(|k|-1) (1+mu1+mu2))`` for
    ``k < 0``.
    """
    check_sdl(mu1, mu2, allow_geometric=True)
    r1, r2, c = _ratios(mu1, mu2)
    k = np.asarray(k)
    ak = np.abs(k)
    upper = 1.0 - mu1 * np.power(r1, ak) / c
    lower = (1.0 + mu2) * np.power(r2, ak) / c
    out = np.where(k >= 0, upper, lower)
    return out if out.ndim else float(out)


def sdl_cf(s, mu1, mu2):
    """Characteristic function ``E exp(i s Z)``."""
    check_sdl(mu1, mu2, allow_geometric=True)
    e = np.exp(1j * np.asarray(s, dtype=float))
    out = 1.0 / ((1.0 + mu1 * (1.0 - e)) * (1.0 + mu2 * (1.0 - np.conj(e))))
    return out if out.ndim else complex(out)


def stirling2(k, j):
    """Stirling number of the second kind, exact integer arithmetic."""
    k, j = int(k), int(j)
    if k < 0 or j < 0:
        raise ParameterError("Stirling numbers need non-negative arguments")
    if j > k:
        raise ParameterError(f"S(k, j) requires j <= k, got k={k}, j={j}")
    # row[j] holds S(n, j) as n advances
    row = [1] + [0] * j
    for n in range(1, k + 1):
        for i in range(min(n, j), 0, -1):
            row[i] = i * row[i] + row[i - 1]
        row[0] = 0
    return row[j]


def _stirling_sum(k, mu1, mu2, sign):
    check_sdl(mu1, mu2, allow_geometric=True)
    if int(k) != k or k < 1:
        raise ParameterError(f"moment order must be a positive integer, got {k}")
    k = int(k)
    total = 0.0
    for j in range(1, k + 1):
        total += factorial(j) * stirling2(k, j) * (mu1**j / (1.0 + mu2) + sign * mu2**j / (1.0 + mu1))
    return (1.0 + mu1) * (1.0 + mu2) / (1.0 + mu1 + mu2) * total


def sdl_moment(k, mu1, mu2):
    """Raw moment ``E(Z^k)``."""
    return _stirling_sum(k, mu1, mu2, (-1.0) ** int(k))


def sdl_abs_moment(k, mu1, mu2):
    """Absolute moment ``E(|Z|^k)``."""
    return _stirling_sum(k, mu1, mu2, 1.0)


def sdl_mean(mu1, mu2):
    return mu1 - mu2


def sdl_var(mu1, mu2):
    return mu1 * (1.0 + mu1) + mu2 * (1.0 + mu2)


def sdl_sgn_z2(mu1, mu2):
    """``E(sgn(Z) Z^2)`` with ``sgn(0) = 1``."""
    check_sdl(mu1, mu2, allow_geometric=True)
    num = mu1 * (1 + mu1) * (1 + 2 * mu1) - mu2 * (1 + mu2) * (1 + 2 * mu2)
    return num / (1.0 + mu1 + mu2)


def geom_pmf(g, mean):
    """pmf ``mean^g / (1 + mean)^(g+1)`` of the geometric law on the naturals."""
    g = np.asarray(g)
    if mean == 0:
        out = (g == 0).astype(float)
    else:
        out = np.where(g >= 0, np.power(mean / (1.0 + mean), np.abs(g)) / (1.0 + mean), 0.0)
    return out if out.ndim else float(out)


def geom_sample(mean, rng, size=None):
    """Geometric draws on the naturals with the given mean, by cdf inversion.

    ``P(G >= g) = q^g`` with ``q = mean / (1 + mean)``, so
    ``G = floor(log U / log q)`` for ``U`` uniform on ``(0, 1]``.
    """
    if mean < 0:
        raise ParameterError(f"geometric mean must be >= 0, got {mean}")
    if mean == 0:
        return 0 if size is None else np.zeros(size, dtype=np.int64)
    u = 1.0 - rng.random(size)
    g = np.floor(np.log(u) / np.log(mean / (1.0 + mean)))
    return int(g) if size is None else g.astype(np.int64)


def sdl_sample(mu1, mu2, rng, size=None):
    """SDL draws as the difference of two independent geometric draws."""
    check_sdl(mu1, mu2, allow_geometric=True)
    return geom_sample(mu1, rng, size) - geom_sample(mu2, rng, size)


def tail_bound(mu1, mu2, eps=1e-12):
    """Smallest ``K`` with both tail masses beyond ``+-K`` below ``eps``."""
    r = max(mu1 / (1.0 + mu1), mu2 / (1.0 + mu2))
    if r == 0:
        return 1
    return int(np.ceil(np.log(eps) / np.log(r))) + 1
