"""Residuals, goodness-of-fit statistics, sample ACF/PACF and the jump chart."""

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DegenerateSeriesError, ParameterError
from .moments import jump_second_moment
from .params import StinarParams


def stinar_predictor(p):
    """One-step conditional mean ``(1 - alpha)(mu1 - mu2) + alpha z``.

    ``p`` may be inadmissible (raw estimates), so no validation is done here.
    """
    a, m1, m2 = p.astuple() if isinstance(p, StinarParams) else p
    return lambda prev: (1 - a) * (m1 - m2) + a * np.asarray(prev, dtype=float)


def tinar_predictor(beta, lambda1, lambda2):
    """One-step conditional mean ``beta z + lambda1 - lambda2``."""
    return lambda prev: beta * np.asarray(prev, dtype=float) + (lambda1 - lambda2)


def residuals(z, predictor):
    """``e_t = z_t - predictor(z_{t-1})`` for ``t = 2..n``."""
    z = np.asarray(z, dtype=float)
    if len(z) < 2:
        raise DegenerateSeriesError("residuals need at least two observations")
    return z[1:] - predictor(z[:-1])


@dataclass
class GofStats:
    rm: float
    rms: float
    ma: float
    mda: float
    residuals: list = field(default_factory=list, repr=False)

    def to_dict(self):
        return asdict(self)


def gof(resid):
    """RM, RMS, MA and MDA of a residual sequence.

    RM is read as the signed root of the mean residual, ``sign(m) sqrt(|m|)``.
    """
    e = np.asarray(resid, dtype=float)
    if e.size == 0:
        raise ParameterError("goodness-of-fit statistics need at least one residual")
    m = e.mean()
    return GofStats(
        rm=float(math.copysign(math.sqrt(abs(m)), m)),
        rms=float(np.sqrt(np.mean(e * e))),
        ma=float(np.mean(np.abs(e))),
        mda=float(np.median(np.abs(e))),
        residuals=e.tolist(),
    )


def empirical_acf(z, max_lag):
    """Sample autocorrelations ``rho(0..max_lag)`` with lag-0 autocovariance in the denominator."""
    z = np.asarray(z, dtype=float)
    n = len(z)
    if not 0 <= max_lag < n:
        raise ParameterError(f"max_lag must lie in [0, {n - 1}], got {max_lag}")
    d = z - z.mean()
    c0 = np.dot(d, d)
    if c0 == 0:
        raise DegenerateSeriesError("autocorrelation undefined for a constant series")
    return np.array([np.dot(d[k:], d[: n - k]) / c0 for k in range(max_lag + 1)])


def empirical_pacf(z, max_lag):
    """Sample partial autocorrelations at lags ``1..max_lag`` by Durbin-Levinson."""
    r = empirical_acf(z, max_lag)
    out = np.empty(max_lag)
    phi = np.zeros(0)
    v = 1.0
    for k in range(1, max_lag + 1):
        num = r[k] - np.dot(phi, r[k - 1:0:-1])
        pk = num / v
        phi = np.append(phi - pk * phi[::-1], pk)
        v *= 1 - pk * pk
        out[k - 1] = pk
    return out


@dataclass
class ChartSpec:
    sigma_j: float
    lower: float
    upper: float
    jumps: list
    violations: list

    def rows(self):
        """``(t, jump, lower, upper)`` rows, ``t`` indexing the later observation."""
        return [(t + 1, j, self.lower, self.upper) for t, j in enumerate(self.jumps)]

    def to_dict(self):
        return asdict(self)


def jump_chart(z, p, width=3.0):
    """Jump series ``z_t - z_{t-1}`` against ``+-width * sigma_J`` limits.

    Violations are reported as indices into the jump list.
    """
    if not isinstance(p, StinarParams):
        p = StinarParams(*p)
    z = np.asarray(z, dtype=np.int64)
    sig = math.sqrt(jump_second_moment(p))
    jumps = np.diff(z)
    limit = width * sig
    viol = np.flatnonzero(np.abs(jumps) > limit)
    return ChartSpec(sig, -limit, limit, jumps.tolist(), viol.tolist())


def describe(z):
    """Minimum, median, mean, variance (ddof=1), lag-1 autocorrelation, maximum."""
    z = np.asarray(z, dtype=float)
    if z.size == 0:
        raise ParameterError("cannot describe an empty series")
    out = {
        "n": int(z.size),
        "min": float(z.min()),
        "median": float(np.median(z)),
        "mean": float(z.mean()),
        "variance": float(z.var(ddof=1)) if z.size > 1 else None,
        "rho1": None,
        "max": float(z.max()),
        "flags": [],
    }
    if z.size == 1:
        out["flags"].append("variance-undefined")
    try:
        if z.size > 1:
            out["rho1"] = float(empirical_acf(z, 1)[1])
    except DegenerateSeriesError:
        out["flags"].append("acf-undefined")
    return out
