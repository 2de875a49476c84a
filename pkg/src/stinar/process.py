"""Thinning operators, path simulation and closed-form process quantities.

A STINAR(1) path is built as ``Z_t = X_t - Y_t`` from two independent
NGINAR(1) paths sharing the thinning parameter ``alpha``. Each latent path is
started from its stationary geometric marginal, so every ``Z_t`` is exactly
SDL(mu1, mu2) distributed and no burn-in is needed.
"""

import numpy as np

from .errors import ParameterError
from .innovations import NginarInnovation, StinarInnovation, nginar_innov_sample, stinar_innov_cf, stinar_innov_cumulants
from .params import StinarParams, TinarParams
from .sdl import geom_sample


def _params(p):
    return p if isinstance(p, StinarParams) else StinarParams(*p)


def nb_thin(x, alpha, rng):
    """Negative binomial thinning ``alpha * x``.

    The sum of ``x`` iid geometric(mean ``alpha``) counts is negative binomial
    with ``x`` successes and success probability ``1 / (1 + alpha)``; that draw
    is used directly. Accepts a scalar or an integer array of states.
    """
    if alpha < 0:
        raise ParameterError(f"thinning parameter must be >= 0, got {alpha}")
    xa = np.asarray(x, dtype=np.int64)
    if np.any(xa < 0):
        raise ParameterError("negative binomial thinning needs non-negative counts")
    out = np.zeros_like(xa)
    live = xa > 0
    if alpha > 0 and np.any(live):
        out[live] = rng.negative_binomial(xa[live], 1.0 / (1.0 + alpha))
    return out if out.ndim else int(out)


def _nginar_path(mu, alpha, n, rng):
    # scalar recursion; far cheaper than array calls for a single path
    inn = NginarInnovation(mu, alpha)
    x = int(geom_sample(mu, rng))
    eps = nginar_innov_sample(inn, rng, n - 1).tolist() if n > 1 else []
    out = [x]
    if alpha == 0:
        out.extend(eps)
        return np.array(out, dtype=np.int64)
    nb = rng.negative_binomial
    prob = 1.0 / (1.0 + alpha)
    for e in eps:
        x = (int(nb(x, prob)) if x > 0 else 0) + e
        out.append(x)
    return np.array(out, dtype=np.int64)


def _nginar_paths(mu, alpha, n, rng, reps):
    if reps == 1:
        return _nginar_path(mu, alpha, n, rng)[None, :]
    inn = NginarInnovation(mu, alpha)
    out = np.empty((reps, n), dtype=np.int64)
    out[:, 0] = geom_sample(mu, rng, reps)
    if n > 1:
        eps = nginar_innov_sample(inn, rng, reps * (n - 1)).reshape(reps, n - 1)
        for t in range(1, n):
            out[:, t] = nb_thin(out[:, t - 1], alpha, rng) + eps[:, t - 1]
    return out


def _check_n(n):
    if int(n) != n or n < 1:
        raise ParameterError(f"path length must be a positive integer, got {n}")
    return int(n)


def simulate_nginar(mu, alpha, n, rng, reps=None):
    """Stationary NGINAR(1) path ``X_t = alpha * X_{t-1} + e_t`` with geometric(mu) marginals.

    With ``reps`` set, returns a ``(reps, n)`` array of independent paths.
    """
    n = _check_n(n)
    paths = _nginar_paths(mu, alpha, n, rng, 1 if reps is None else reps)
    return paths[0] if reps is None else paths


def simulate_stinar(p, n, rng, latent=False, reps=None):
    """Stationary STINAR(1) path of length ``n``.

    Parameters
    ----------
    p : StinarParams or (alpha, mu1, mu2)
    n : int
    rng : numpy.random.Generator
    latent : bool
        Also return the latent NGINAR paths ``X`` and ``Y``.
    reps : int, optional
        Simulate that many independent paths at once, shape ``(reps, n)``.
    """
    p = _params(p)
    n = _check_n(n)
    r = 1 if reps is None else reps
    x = _nginar_paths(p.mu1, p.alpha, n, rng, r)
    y = _nginar_paths(p.mu2, p.alpha, n, rng, r)
    if reps is None:
        x, y = x[0], y[0]
    z = x - y
    return (z, x, y) if latent else z


def simulate_alternating(p, n, rng, reps=None):
    """Negative-autocorrelation variant: ``X_t - Y_t`` on even ``t``, ``Y_t - X_t`` on odd ``t``.

    Its autocorrelation is ``(-alpha)^k``.
    """
    z = simulate_stinar(p, n, rng, reps=reps)
    sign = np.where(np.arange(z.shape[-1]) % 2 == 0, 1, -1)
    return z * sign


def simulate_tinar(p, n, rng, latent=False):
    """Asymmetric TINAR(1): difference of two independent Poisson INAR(1) paths.

    Each latent path starts from its stationary Poisson(lambda_i / (1 - beta))
    law and evolves by binomial thinning plus Poisson(lambda_i) innovations.
    """
    if not isinstance(p, TinarParams):
        p = TinarParams(*p)
    n = _check_n(n)

    def path(lam):
        x = int(rng.poisson(lam / (1 - p.beta)))
        out = [x]
        binom = rng.binomial
        for e in rng.poisson(lam, n - 1).tolist():
            x = int(binom(x, p.beta)) + e
            out.append(x)
        return np.array(out, dtype=np.int64)

    x = path(p.lambda1)
    y = path(p.lambda2)
    return (x - y, x, y) if latent else x - y


def acf(p, k):
    """Theoretical autocorrelation ``alpha^k``."""
    p = _params(p)
    if k < 0:
        raise ParameterError("lag must be non-negative")
    return p.alpha ** k


def spectral_density(p, omega):
    """Closed form ``(1 - a^2) sigma^2 / (2 pi (1 + a^2 - 2 a cos w))``.

    This is the autocovariance-based density, so it integrates to ``sigma^2``
    over ``(-pi, pi]``.
    """
    p = _params(p)
    a = p.alpha
    w = np.asarray(omega, dtype=float)
    out = (1 - a * a) / (2 * np.pi) * p.var / (1 + a * a - 2 * a * np.cos(w))
    return out if out.ndim else float(out)


def _denominator(s, p):
    a, m1, m2 = p.astuple()
    e = np.exp(1j * s)
    A = 1 + a * (1 - e)
    B = 1 + a * (1 - np.conj(e))
    # A * B = |A|^2 >= 1, so D >= 1 + mu1 + mu2 and never vanishes
    return A, B, (1 + m1) * (1 + m2) * A * B - m1 * m2


def cond_cf(s, z, p):
    """Characteristic function of ``Z_t`` given ``Z_{t-1} = z``."""
    p = _params(p)
    s = np.asarray(s, dtype=float)
    A, B, D = _denominator(s, p)
    phi_eps = stinar_innov_cf(s, StinarInnovation(p))
    c = 1 + p.mu1 + p.mu2
    if z >= 0:
        out = c * phi_eps * A ** (1 - z) * B / D
    else:
        out = c * phi_eps * A * B ** (1 + z) / D
    return out if np.ndim(out) else complex(out)


def cond_mean(z, p):
    p = _params(p)
    return (1 - p.alpha) * (p.mu1 - p.mu2) + p.alpha * np.asarray(z, dtype=float)


def cond_var(z, p):
    p = _params(p)
    a, m1, m2 = p.astuple()
    _, var_eps = stinar_innov_cumulants(StinarInnovation(p))
    return var_eps + a * (1 + a) * np.abs(np.asarray(z, dtype=float)) + 2 * a * (1 + a) * m1 * m2 / (1 + m1 + m2)


def _varphi(s, p):
    A, B, D = _denominator(s, p)
    return stinar_innov_cf(s, StinarInnovation(p)) * A * B / D, A, B


def joint_cf(s, u, p, variant="corrected"):
    """Joint characteristic function ``E exp(i s Z_t + i u Z_{t-1})``.

    ``variant="literal"`` keeps ``exp(+iu)`` in the negative-side term, which
    breaks ``joint_cf(0, u) == sdl_cf(u)``; the default ``"corrected"`` form
    uses ``exp(-iu)`` there, as summing over ``Z_{t-1} < 0`` requires.
    """
    if variant not in ("corrected", "literal"):
        raise ParameterError(f"unknown joint_cf variant {variant!r}")
    p = _params(p)
    s = np.asarray(s, dtype=float)
    u = np.asarray(u, dtype=float)
    m1, m2 = p.mu1, p.mu2
    vphi, A, B = _varphi(s, p)
    eu = np.exp(1j * u)
    en = eu if variant == "literal" else np.conj(eu)
    out = vphi * ((1 + m1) * A / ((1 + m1) * A - eu * m1) + m2 * en / ((1 + m2) * B - en * m2))
    return out if np.ndim(out) else complex(out)
