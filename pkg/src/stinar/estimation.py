"""Estimation and asymptotic inference for STINAR(1), plus the TINAR(1) comparison fit.

``alpha`` is estimated by conditional least squares (CLS). ``mu1`` and
``mu2`` are method-of-moments estimates from the sample means of the
positive and negative parts. Standard errors are plug-in values of the
asymptotic variances evaluated at the estimates.
"""

import math
import warnings
from dataclasses import asdict, dataclass, field
from statistics import NormalDist

import numpy as np

from .errors import DegenerateSeriesError, ParameterError
from .params import StinarParams, alpha_bound
from .sdl import sdl_abs_moment, sdl_sgn_z2


class StinarWarning(UserWarning):
    pass


def _series(z, min_len=1):
    z = np.asarray(z)
    if z.ndim != 1:
        raise ParameterError("series must be one-dimensional")
    if len(z) < min_len:
        raise DegenerateSeriesError(f"need at least {min_len} observations, got {len(z)}")
    return z.astype(float)


def cls_alpha(z, symmetric=False):
    """CLS estimate of the thinning parameter.

    The non-symmetric form profiles out the mean; the symmetric form assumes
    a zero mean. The raw ratio is returned even when it falls outside
    ``[0, 1)``; a :class:`StinarWarning` is issued in that case.
    """
    z = _series(z, 2 if symmetric else 3)
    cur, lag = z[1:], z[:-1]
    if symmetric:
        num = np.dot(cur, lag)
        den = np.dot(lag, lag)
    else:
        m = len(cur)
        num = m * np.dot(cur, lag) - cur.sum() * lag.sum()
        den = m * np.dot(lag, lag) - lag.sum() ** 2
    if den == 0:
        raise DegenerateSeriesError("CLS denominator is zero (constant lagged series)")
    a = float(num / den)
    if not 0 <= a < 1:
        warnings.warn(f"CLS estimate alpha={a:.4g} lies outside [0, 1)", StinarWarning, stacklevel=2)
    return a


def _F1(x, y):
    r = 1 + math.sqrt(1 + 4 * x * y)
    return (2 * y + (x - y) * r) / (r * (1 + x - y))


def _F2(x, y):
    r = math.sqrt(1 + 4 * x * y)
    return 2 * y * (1 + x - y) / (1 + 2 * y * (x - y) + r)


def mom_from_parts(pos_mean, neg_mean):
    """Solve for ``(mu1, mu2)`` given the means of ``Z^+`` and ``Z^-``."""
    if pos_mean < 0 or neg_mean < 0:
        raise ParameterError("part means must be non-negative")
    if pos_mean >= neg_mean:
        f1, f2 = _F1(pos_mean, neg_mean), _F2(pos_mean, neg_mean)
        return f1 / (1 - f1), f2 / (1 - f2)
    f2, f1 = _F2(neg_mean, pos_mean), _F1(neg_mean, pos_mean)
    return f2 / (1 - f2), f1 / (1 - f1)


def mom_mu(z):
    """Method-of-moments estimates ``(mu1_hat, mu2_hat)``.

    An all-zero series yields ``(0.0, 0.0)`` with a :class:`StinarWarning`.
    """
    z = _series(z)
    pos = float(np.maximum(z, 0).mean())
    neg = float(np.maximum(-z, 0).mean())
    if pos == 0 and neg == 0:
        warnings.warn("all-zero series: method of moments is degenerate", StinarWarning, stacklevel=2)
        return 0.0, 0.0
    return mom_from_parts(pos, neg)


def asym_var_alpha(p):
    """Asymptotic variance of ``sqrt(n) (alpha_hat - alpha)``."""
    if not isinstance(p, StinarParams):
        p = StinarParams(*p)
    a, m1, m2 = p.astuple()
    s2 = p.var
    mu = p.mean
    var_eps = (1 + a) * (m1 * ((1 - a) * (1 + m1) - a) + m2 * ((1 - a) * (1 + m2) - a))
    extra = 2 * a * (1 + a) * m1 * m2 / (1 + m1 + m2)
    abs_part = sdl_abs_moment(3, m1, m2) - 2 * mu * sdl_sgn_z2(m1, m2) + mu**2 * sdl_abs_moment(1, m1, m2)
    return (var_eps + extra) / s2 + a * (a + 1) / s2**2 * abs_part


def asym_cov_mu(mu1, mu2):
    """Asymptotic covariance matrix of ``sqrt(n) (mu_hat - mu)``."""
    if mu1 <= 0 or mu2 <= 0:
        raise ParameterError(f"asymptotic covariance needs mu1, mu2 > 0, got {mu1}, {mu2}")
    m1, m2 = mu1, mu2
    scale = m1 * m2 * (1 + m1) * (1 + m2) / ((1 + m1) * (1 + m2) + m1 * m2)
    s11 = ((1 + m1) * (1 + m2) ** 2 - m1 * m2**2) / (m2 * (1 + m2))
    s22 = ((1 + m2) * (1 + m1) ** 2 - m2 * m1**2) / (m1 * (1 + m1))
    return scale * np.array([[s11, 1.0], [1.0, s22]])


def normal_quantile(level):
    """Two-sided standard normal quantile for confidence ``level``."""
    if not 0 < level < 1:
        raise ParameterError(f"level must lie in (0, 1), got {level}")
    if level == 0.95:
        return 1.959964
    return NormalDist().inv_cdf(0.5 + level / 2)


@dataclass
class FitReport:
    n: int
    level: float
    alpha_hat: float
    mu1_hat: float
    mu2_hat: float
    se_alpha: float = math.nan
    se_mu1: float = math.nan
    se_mu2: float = math.nan
    cov_mu1_mu2: float = math.nan
    se_mu: float = math.nan
    ci_alpha: tuple = (math.nan, math.nan)
    ci_mu1: tuple = (math.nan, math.nan)
    ci_mu2: tuple = (math.nan, math.nan)
    ci_mu: tuple = (math.nan, math.nan)
    mu_test: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    @property
    def mu_hat(self):
        return self.mu1_hat - self.mu2_hat

    def params(self):
        return StinarParams(self.alpha_hat, self.mu1_hat, self.mu2_hat)

    def to_dict(self):
        return asdict(self)


def _ci(est, se, q):
    return (est - q * se, est + q * se)


def infer(z, level=0.95, symmetric=False):
    """Fit a STINAR(1) model and attach plug-in standard errors, CIs and the ``mu1 == mu2`` test."""
    z = _series(z, 3)
    n = len(z)
    flags = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", StinarWarning)
        a_hat = cls_alpha(z, symmetric=symmetric)
        m1, m2 = mom_mu(z)
    rep = FitReport(n=n, level=level, alpha_hat=a_hat, mu1_hat=m1, mu2_hat=m2)
    q = normal_quantile(level)
    rep.mu_test = {"reject": None, "level": 1 - level}

    if m1 <= 0 or m2 <= 0:
        flags.append("inference-unavailable: mu estimate not positive")
        rep.warnings = flags
        return rep

    bound = alpha_bound(m1, m2)
    a_eval = a_hat
    if not 0 <= a_hat <= bound:
        flags.append(f"alpha-outside-admissible-region: {a_hat:.6g} not in [0, {bound:.6g}]")
        a_eval = min(max(a_hat, 0.0), bound - 1e-9)
        flags.append(f"alpha clamped to {a_eval:.6g} for variance evaluation")

    nu2 = asym_var_alpha(StinarParams(a_eval, m1, m2))
    sigma = asym_cov_mu(m1, m2)
    rep.se_alpha = math.sqrt(nu2 / n)
    rep.se_mu1 = math.sqrt(sigma[0, 0] / n)
    rep.se_mu2 = math.sqrt(sigma[1, 1] / n)
    rep.cov_mu1_mu2 = float(sigma[0, 1] / n)
    rep.se_mu = math.sqrt((sigma[0, 0] + sigma[1, 1] - 2 * sigma[0, 1]) / n)
    rep.ci_alpha = _ci(a_hat, rep.se_alpha, q)
    rep.ci_mu1 = _ci(m1, rep.se_mu1, q)
    rep.ci_mu2 = _ci(m2, rep.se_mu2, q)
    rep.ci_mu = _ci(rep.mu_hat, rep.se_mu, q)
    lo, hi = rep.ci_mu
    rep.mu_test["reject"] = bool(not lo <= 0 <= hi)
    rep.warnings = flags
    return rep


@dataclass
class TinarFit:
    beta_hat: float
    lambda1_hat: float
    lambda2_hat: float
    warnings: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)


def tinar_fit(z):
    """CLS for ``beta``; ``lambda1, lambda2`` from the sample mean and variance (ddof=1)."""
    z = _series(z, 3)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", StinarWarning)
        b = cls_alpha(z)
    m = z.mean()
    s2 = z.var(ddof=1)
    l1 = (1 - b) * (s2 + m) / 2
    l2 = (1 - b) * (s2 - m) / 2
    flags = []
    if not 0 <= b < 1:
        flags.append(f"beta-outside-unit-interval: {b:.6g}")
    if s2 < abs(m):
        flags.append("negative-lambda: sample variance below |sample mean|")
    return TinarFit(b, float(l1), float(l2), flags)
