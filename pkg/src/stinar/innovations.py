"""Innovation laws of the NGINAR(1) and STINAR(1) recursions.

The NGINAR(1) innovation is a two-component geometric mixture with weight
``w = alpha * mu / (mu - alpha)`` on the mean-``alpha`` component. The STINAR
innovation is the difference of two independent NGINAR innovations, which
expands into a four-component SDL mixture.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .params import StinarParams
from .sdl import geom_pmf, geom_sample


@dataclass(frozen=True)
class NginarInnovation:
    mu: float
    alpha: float

    def __post_init__(self):
        if self.mu <= 0:
            raise ParameterError(f"mu must be > 0, got {self.mu}")
        bound = self.mu / (1 + self.mu)
        if self.alpha < 0 or self.alpha > bound:
            raise ParameterError(
                f"alpha={self.alpha} violates 0 <= alpha <= mu/(1+mu) = {bound:.6g}"
            )

    @property
    def weight(self):
        return self.alpha * self.mu / (self.mu - self.alpha)

    @property
    def mean(self):
        return (1 - self.alpha) * self.mu

    @property
    def var(self):
        a, m = self.alpha, self.mu
        return (1 + a) * m * ((1 - a) * (1 + m) - a)


def nginar_innov_pmf(l, inn):
    """pmf on the naturals; note there is mass at ``l = 0``."""
    w = inn.weight
    return (1 - w) * geom_pmf(l, inn.mu) + w * geom_pmf(l, inn.alpha)


def nginar_innov_cf(s, inn):
    e = np.exp(1j * np.asarray(s, dtype=float))
    w = inn.weight
    return (1 - w) / (1 + inn.mu * (1 - e)) + w / (1 + inn.alpha * (1 - e))


def nginar_innov_sample(inn, rng, size=None):
    """Pick the component by weight, then draw a geometric."""
    n = 1 if size is None else size
    pick = rng.random(n) < inn.weight
    out = np.where(pick, geom_sample(inn.alpha, rng, n), geom_sample(inn.mu, rng, n))
    return int(out[0]) if size is None else out


def _pmf2(k, a, b):
    # two-sided geometric pmf, zero means allowed
    k = np.asarray(k)
    c = 1.0 + a + b
    return np.where(k >= 0, np.power(a / (1 + a), np.abs(k)), np.power(b / (1 + b), np.abs(k))) / c


class StinarInnovation:
    """Innovation ``eps_t = e_t - v_t`` of a STINAR(1) process."""

    def __init__(self, params):
        if not isinstance(params, StinarParams):
            params = StinarParams(*params)
        self.params = params
        a, m1, m2 = params.astuple()
        self.pos = NginarInnovation(m1, a)
        self.neg = NginarInnovation(m2, a)

    @property
    def weights(self):
        """``(beta1, beta2, beta3, beta4)`` of the four SDL components."""
        w1, w2 = self.pos.weight, self.neg.weight
        return (1 - w1) * (1 - w2), (1 - w1) * w2, w1 * (1 - w2), w1 * w2

    def __repr__(self):
        return f"StinarInnovation({self.params!r})"


def stinar_innov_pmf(k, inn):
    a, m1, m2 = inn.params.astuple()
    b1, b2, b3, b4 = inn.weights
    out = b1 * _pmf2(k, m1, m2) + b2 * _pmf2(k, m1, a) + b3 * _pmf2(k, a, m2) + b4 * _pmf2(k, a, a)
    return out if np.ndim(out) else float(out)


def stinar_innov_sample(inn, rng, size=None):
    return nginar_innov_sample(inn.pos, rng, size) - nginar_innov_sample(inn.neg, rng, size)


def stinar_innov_cf(s, inn):
    """Closed-form rational characteristic function of the STINAR innovation."""
    a, m1, m2 = inn.params.astuple()
    e = np.exp(1j * np.asarray(s, dtype=float))
    ec = np.conj(e)
    num = (1 + a * (1 + m1) * (1 - e)) * (1 + a * (1 + m2) * (1 - ec))
    den = (1 + m1 * (1 - e)) * (1 + a * (1 - e)) * (1 + m2 * (1 - ec)) * (1 + a * (1 - ec))
    out = num / den
    return out if out.ndim else complex(out)


def stinar_innov_cumulants(inn):
    """``(mean, variance)`` of the STINAR innovation."""
    a, m1, m2 = inn.params.astuple()
    mean = (1 - a) * (m1 - m2)
    var = (1 + a) * (m1 * ((1 - a) * (1 + m1) - a) + m2 * ((1 - a) * (1 + m2) - a))
    return mean, var
