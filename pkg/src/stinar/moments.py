"""Joint moments of a STINAR(1) process and analytics of its jump process.

Notation: ``mu(s1, ..., s_{r-1}) = E(Z_t Z_{t+s1} ... Z_{t+s_{r-1}})`` with
ordered, non-negative lags. Four patterns are supported: ``(s,)``,
``(0, s)``, ``(s, s)`` and ``(s, u)`` with ``s < u``.

Two variants are available for the third-order patterns. ``"literal"``
transcribes the closed forms as originally stated. ``"corrected"`` (default)
is derived from the latent NGINAR representation and agrees with simulation.
The literal ``(s, s)`` and ``(s, u)`` forms do not: the literal ``(s, u)`` form
is not even zero at ``mu1 == mu2``. The two variants coincide for ``(s,)`` and
``(0, s)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, UnsupportedConfigurationError
from .params import StinarParams
from .process import joint_cf
from .sdl import sdl_moment

VARIANTS = ("corrected", "literal")


def _params(p):
    return p if isinstance(p, StinarParams) else StinarParams(*p)


def _mu_s(p, s):
    a, m1, m2 = p.astuple()
    return a**s * (m1 * (1 + m1) + m2 * (1 + m2)) + (m1 - m2) ** 2


def _mu_0s_literal(p, s):
    a, m1, m2 = p.astuple()
    c = a**s
    return (
        2 * (2 + c) * m1 * m2 * (m2 - m1)
        + m1**2 * (1 + 2 * m1)
        - m2**2 * (1 + 2 * m2)
        + c * (m1 * (1 + 5 * m1 + 4 * m1**2) - m2 * (1 + 5 * m2 + 4 * m2**2))
    )


def _mu_ss_literal(p, s):
    a, m1, m2 = p.astuple()
    c = a**s
    q = 1 - a
    return (
        2 * (2 + c) * m1 * m2 * (m2 - m1)
        + m1**2 * (1 + 2 * m1)
        - m2**2 * (1 + 2 * m2)
        + 2 * a ** (s + 1) / q * (m2 * (1 + m2) ** 2 - m1 * (1 + m1) ** 2)
        + 2 * a ** (2 * s) / q * (m1**2 * (1 + m1) - m2**2 * (1 + m2))
        + a ** (s + 1) / q * (m1 * (1 + m1) * (1 - 2 * m1) - m2 * (1 + m2) * (1 - 2 * m2))
        + c / q * (m1 * (1 + m1) * (1 + 2 * m1) - m2 * (1 + m2) * (1 + 2 * m2))
    )


def _mu_su_literal(p, s, u):
    # the line break before the alpha^(u-s)/(1-alpha) block is read as '+'
    a, m1, m2 = p.astuple()
    d = u - s
    S = a**s + a**u + a**d
    return (
        -m2 * (3 * m1**2 + m1 * (1 + m1) * S)
        + m1 * (3 * m2**2 + m2 * (1 + m2) * S)
        + a**d / (1 - a) * (
            2 * a ** (2 * s + 1) * (m2 * (1 + m2) ** 2 - m1 * (1 + m1) ** 2)
            + 2 * a ** (2 * s) * (m1**2 * (1 + m1) ** 2 - m2**2 * (1 + m2))
            + a ** (s + 1) * (m1**2 * (1 + m1) * (1 - 2 * m1) - m2 * (1 + m2) * (1 - 2 * m2))
            + a**s * (m1**2 * (1 + m1) * (1 + 2 * m1) - m2 * (1 + m2) * (1 + 2 * m2))
        )
        + a**d * (m1**2 * (1 + 2 * m1) - m2**2 * (1 + 2 * m2))
        + (1 - a**d) * (a**s * (m1**2 * (1 + m1) - m2**2 * (1 + m2)) + m1**3 - m2**3)
    )


def _mu_0s(p, s):
    # E(Z_{t+s} | past) = a^s Z_t + (1 - a^s) mu
    a, m1, m2 = p.astuple()
    c = a**s
    mu = m1 - m2
    return c * sdl_moment(3, m1, m2) + (1 - c) * mu * sdl_moment(2, m1, m2)


def _mu_ss(p, s):
    # from Var(X_{t+s} | X_t) being affine in X_t for each latent NGINAR path
    a, m1, m2 = p.astuple()
    c = a**s
    mu = m1 - m2
    r = 2 * m1**2 - 2 * m1 * m2 + 2 * m2**2 + m1 + m2
    p0 = 2 * m1**2 + 3 * m1 + 2 * m2**2 + 3 * m2 + 1
    p1 = 2 * m1**2 + m1 + 2 * m2**2 + m2 - 1
    q0 = m1**2 + m1 * m2 + m2**2 + m1 + m2
    q1 = q0 + m1 + m2 + 1
    return mu * (r + (c * (p0 - a * p1) + 2 * c * c * (q0 - a * q1)) / (1 - a))


def _mu_su(p, s, u):
    c = p.alpha ** (u - s)
    return c * _mu_ss(p, s) + (1 - c) * p.mean * _mu_s(p, s)


def joint_moment(p, lags, variant="corrected"):
    """Second- or third-order joint moment for a supported lag pattern.

    >>> joint_moment((0.5, 3, 3), (1,))
    12.0
    """
    if variant not in VARIANTS:
        raise ParameterError(f"unknown variant {variant!r}, expected one of {VARIANTS}")
    p = _params(p)
    lags = tuple(int(l) for l in lags)
    if any(l < 0 for l in lags) or list(lags) != sorted(lags):
        raise UnsupportedConfigurationError(f"lags must be sorted and non-negative, got {lags}")
    literal = variant == "literal"
    if len(lags) == 1:
        return _mu_s(p, lags[0])
    if len(lags) == 2:
        s, u = lags
        if s == 0:
            return _mu_0s_literal(p, u) if literal else _mu_0s(p, u)
        if s == u:
            return _mu_ss_literal(p, s) if literal else _mu_ss(p, s)
        return _mu_su_literal(p, s, u) if literal else _mu_su(p, s, u)
    raise UnsupportedConfigurationError(
        f"lag pattern {lags} unsupported; use (s,), (0, s), (s, s) or (s, u)"
    )


@dataclass
class JumpSummary:
    mean: float
    second_moment: float
    third_moment: float
    sigma_j: float
    acf: dict = field(default_factory=dict)


def _jump2(a, m1, m2):
    return 2 * (1 - a) * (m1 * (1 + m1) + m2 * (1 + m2))


def _jump3(a, m1, m2):
    return (
        3 * a * (m1 * (1 + 5 * m1 + 4 * m1**2) - m2 * (1 + 5 * m2 + 4 * m2**2))
        - 6 * a**3 / (1 - a) * (m2 * (1 + m2) ** 2 - m1 * (1 + m1) ** 2)
        - 3 * a**2 / (1 - a) * (m1 * (1 + m1) - m2 * (1 + m2))
        - 3 * a / (1 - a) * (m1 * (1 + m1) * (1 + 2 * m1) - m2 * (1 + m2) * (1 + 2 * m2))
    )


def jump_second_moment(p):
    return _jump2(*_params(p).astuple())


def jump_third_moment(p):
    return _jump3(*_params(p).astuple())


def plugin_jump_moments(alpha, mu1, mu2):
    """``(E J^2, E J^3)`` at estimated parameters, without admissibility checks."""
    return _jump2(alpha, mu1, mu2), _jump3(alpha, mu1, mu2)


def jump_acf(p, k, variant="corrected"):
    """Autocorrelation of ``J_t = Z_t - Z_{t-1}`` at lag ``k >= 1``.

    ``"corrected"`` returns ``-a^(k-1) (1-a) / 2``, the covariance at lag ``k``
    divided by ``Var(J)``. ``"literal"`` returns ``-a^(k-1) (1-a)^2``, which is
    that covariance divided by ``Var(Z)`` instead.
    """
    if variant not in VARIANTS:
        raise ParameterError(f"unknown variant {variant!r}, expected one of {VARIANTS}")
    if int(k) != k or k < 1:
        raise ParameterError(f"jump autocorrelation is defined for lags k >= 1, got {k}")
    a = _params(p).alpha
    if variant == "literal":
        return -(a ** (k - 1)) * (1 - a) ** 2
    return -(a ** (k - 1)) * (1 - a) / 2


def jump_moments(p, max_lag=10):
    p = _params(p)
    m2 = jump_second_moment(p)
    return JumpSummary(
        mean=0.0,
        second_moment=m2,
        third_moment=jump_third_moment(p),
        sigma_j=float(np.sqrt(m2)),
        acf={k: jump_acf(p, k) for k in range(1, max_lag + 1)},
    )


def jump_cf(s, p, variant="corrected"):
    """Characteristic function of the jump, ``joint_cf(s, -s)``."""
    return joint_cf(s, -np.asarray(s, dtype=float), p, variant=variant)
