import numpy as np
import pytest

from stinar.data import swedish


@pytest.fixture
def sweden():
    return swedish()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def chi2_pvalue(draws, pmf, lo, hi, span=3000):
    """Chi-square goodness of fit on bins lo..hi, each tail pooled into its edge bin."""
    from scipy import stats

    draws = np.asarray(draws)
    ks = np.arange(lo, hi + 1)
    obs = np.array([np.sum(draws == k) for k in ks], dtype=float)
    obs[0] += np.sum(draws < lo)
    obs[-1] += np.sum(draws > hi)
    probs = np.asarray(pmf(ks), dtype=float)
    probs[0] += np.sum(pmf(np.arange(lo - span, lo)))
    probs[-1] += np.sum(pmf(np.arange(hi + 1, hi + span)))
    exp_ = probs / probs.sum() * len(draws)
    assert exp_.min() >= 5, "bins too sparse for chi-square"
    return stats.chisquare(obs, exp_).pvalue
