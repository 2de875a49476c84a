"""Parameter containers for the STINAR(1) and asymmetric TINAR(1) models."""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .sdl import check_sdl


def alpha_bound(mu1, mu2=None):
    """Largest admissible thinning parameter, ``min mu_i / (1 + mu_i)``."""
    b = mu1 / (1.0 + mu1)
    if mu2 is not None and mu2 > 0:
        b = min(b, mu2 / (1.0 + mu2))
    return b


@dataclass(frozen=True)
class StinarParams:
    """Thinning parameter ``alpha`` and the SDL marginal means ``mu1``, ``mu2``.

    The process is well defined for ``0 <= alpha <= min(mu1/(1+mu1), mu2/(1+mu2))``;
    the boundary itself is admitted.
    """

    alpha: float
    mu1: float
    mu2: float

    def __post_init__(self):
        check_sdl(self.mu1, self.mu2)
        bound = alpha_bound(self.mu1, self.mu2)
        if not np.isfinite(self.alpha) or self.alpha < 0 or self.alpha > bound:
            raise ParameterError(
                f"alpha={self.alpha} outside admissible region [0, {bound:.4f}] "
                f"(min(mu1/(1+mu1), mu2/(1+mu2)) for mu1={self.mu1}, mu2={self.mu2})"
            )

    @property
    def bound(self):
        return alpha_bound(self.mu1, self.mu2)

    @property
    def mean(self):
        return self.mu1 - self.mu2

    @property
    def var(self):
        return self.mu1 * (1 + self.mu1) + self.mu2 * (1 + self.mu2)

    def astuple(self):
        return self.alpha, self.mu1, self.mu2


@dataclass(frozen=True)
class TinarParams:
    """Binomial thinning ``beta`` and Poisson innovation means ``lambda1``, ``lambda2``."""

    beta: float
    lambda1: float
    lambda2: float

    def __post_init__(self):
        if not (0 <= self.beta < 1):
            raise ParameterError(f"beta must lie in [0, 1), got {self.beta}")
        if self.lambda1 <= 0 or self.lambda2 <= 0:
            raise ParameterError(
                f"lambda1 and lambda2 must be > 0, got {self.lambda1}, {self.lambda2}"
            )

    @property
    def mean(self):
        return (self.lambda1 - self.lambda2) / (1 - self.beta)

    @property
    def var(self):
        return (self.lambda1 + self.lambda2) / (1 - self.beta)
