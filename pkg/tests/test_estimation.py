import math
import warnings

import numpy as np
import pytest

from stinar.errors import DegenerateSeriesError, ParameterError
from stinar.estimation import (
    StinarWarning, asym_cov_mu, asym_var_alpha, cls_alpha, infer, mom_from_parts, mom_mu,
    normal_quantile, tinar_fit,
)
from stinar.params import StinarParams
from stinar.process import simulate_stinar
from stinar.sdl import sdl_pmf


def part_means(m1, m2):
    k = np.arange(1, 3000).astype(float)
    return float(np.sum(k * sdl_pmf(k.astype(int), m1, m2))), float(np.sum(k * sdl_pmf(-k.astype(int), m1, m2)))


def test_cls_alternating_sequence():
    with pytest.warns(StinarWarning):
        assert cls_alpha([0, 1, 0, 1]) == pytest.approx(-1)


def test_cls_degenerate():
    with pytest.raises(DegenerateSeriesError):
        cls_alpha([4, 4, 4, 4])
    with pytest.raises(DegenerateSeriesError):
        cls_alpha([1, 2])


def test_cls_symmetric_form():
    z = np.array([1.0, 2, -1, 0, 3, 1])
    expected = np.dot(z[1:], z[:-1]) / np.dot(z[:-1], z[:-1])
    assert cls_alpha(z, symmetric=True) == pytest.approx(expected)


@pytest.mark.parametrize("m1,m2", [(6, 3), (3, 3), (0.5, 4), (10, 0.2), (1e-3, 2)])
def test_mom_round_trip(m1, m2):
    pos, neg = part_means(m1, m2)
    r1, r2 = mom_from_parts(pos, neg)
    assert r1 == pytest.approx(m1, abs=1e-10)
    assert r2 == pytest.approx(m2, abs=1e-10)


def test_mom_matches_sample_mean_and_is_sign_equivariant():
    rng = np.random.default_rng(31)
    z = simulate_stinar((0.3, 6, 3), 500, rng)
    m1, m2 = mom_mu(z)
    assert m1 - m2 == pytest.approx(z.mean(), abs=1e-12)
    n1, n2 = mom_mu(-z)
    assert (n1, n2) == pytest.approx((m2, m1), abs=1e-12)
    assert cls_alpha(-z) == pytest.approx(cls_alpha(z), abs=1e-12)
    assert cls_alpha(z + 17) == pytest.approx(cls_alpha(z), abs=1e-10)


def test_mom_degenerate():
    with pytest.warns(StinarWarning):
        assert mom_mu(np.zeros(5)) == (0.0, 0.0)
    with pytest.raises(ParameterError):
        mom_from_parts(-1, 2)


def test_normal_quantile():
    assert normal_quantile(0.95) == 1.959964
    assert normal_quantile(0.90) == pytest.approx(1.644854, abs=1e-6)
    with pytest.raises(ParameterError):
        normal_quantile(1.0)


@pytest.mark.parametrize("m1,m2", [(6, 3), (3, 3), (0.1, 8), (20, 20)])
def test_sigma_positive_definite(m1, m2):
    s = asym_cov_mu(m1, m2)
    assert np.allclose(s, s.T)
    assert np.all(np.linalg.eigvalsh(s) > 0)
    with pytest.raises(ParameterError):
        asym_cov_mu(0, 1)


def test_swedish_fit(sweden):
    rep = infer(sweden)
    assert rep.n == 100
    assert rep.alpha_hat == pytest.approx(0.46542, abs=1e-5)
    assert rep.mu1_hat == pytest.approx(8.883433, abs=1e-5)
    assert rep.mu2_hat == pytest.approx(2.193433, abs=1e-5)
    assert rep.se_alpha == pytest.approx(0.095461, abs=1e-5)
    assert rep.se_mu1 == pytest.approx(0.99923, abs=1e-4)
    assert rep.se_mu2 == pytest.approx(0.43649, abs=1e-4)
    assert rep.cov_mu1_mu2 == pytest.approx(0.120475, abs=1e-5)
    assert rep.ci_mu == pytest.approx((4.78164, 8.59836), abs=1e-4)
    assert rep.mu_test["reject"] is True
    assert rep.warnings == []
    assert rep.to_dict()["alpha_hat"] == rep.alpha_hat


def test_swedish_tinar(sweden):
    fit = tinar_fit(sweden)
    assert fit.beta_hat == pytest.approx(0.46542, abs=1e-5)
    assert fit.lambda1_hat == pytest.approx(11.02557, abs=1e-4)
    assert fit.lambda2_hat == pytest.approx(7.44923, abs=1e-4)
    assert fit.warnings == []


def test_infer_flags_inadmissible_alpha():
    z = np.array([0, 3, -2, 4, -3, 2, -1, 3, -2, 1])
    rep = infer(z)
    assert rep.alpha_hat < 0
    assert any("alpha-outside" in w for w in rep.warnings)
    assert math.isfinite(rep.se_alpha)


def test_infer_unavailable_without_negatives():
    rep = infer(np.array([1, 2, 3, 2, 4, 3, 5]))
    assert rep.mu2_hat == 0
    assert math.isnan(rep.se_alpha)
    assert rep.mu_test["reject"] is None


def _batch(p, n, reps, seed):
    z = simulate_stinar(p, n, np.random.default_rng(seed), reps=reps)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", StinarWarning)
        return [infer(row) for row in z]


@pytest.mark.slow
def test_alpha_variance_matches_simulation():
    p = StinarParams(0.3, 6, 3)
    n = 800
    a = np.array([f.alpha_hat for f in _batch(p, n, 1500, 32)])
    assert a.var() * n == pytest.approx(asym_var_alpha(p), rel=0.12)


@pytest.mark.slow
def test_sigma_exact_without_serial_dependence():
    n = 800
    m = np.array([[f.mu1_hat, f.mu2_hat] for f in _batch((0.0, 6, 3), n, 2000, 35)])
    np.testing.assert_allclose(np.cov(m.T) * n, asym_cov_mu(6, 3), rtol=0.12)


@pytest.mark.slow
def test_sigma_understates_under_serial_dependence():
    # sigma carries no alpha term; the long-run variance of the part means is larger
    n = 800
    m = np.array([[f.mu1_hat, f.mu2_hat] for f in _batch((0.3, 6, 3), n, 1500, 32)])
    emp = np.cov(m.T) * n
    sig = asym_cov_mu(6, 3)
    assert emp[0, 0] / sig[0, 0] > 1.3
    assert emp[1, 1] / sig[1, 1] > 1.3


@pytest.mark.slow
def test_alpha_ci_coverage():
    fits = _batch((0.3, 3, 3), 2000, 1000, 33)
    cover = np.mean([f.ci_alpha[0] <= 0.3 <= f.ci_alpha[1] for f in fits])
    assert abs(cover - 0.95) < 0.03


@pytest.mark.slow
def test_mu_test_size_without_serial_dependence():
    fits = _batch((0.0, 3, 3), 400, 1000, 36)
    size = np.mean([f.mu_test["reject"] for f in fits])
    assert abs(size - 0.05) < 0.03


def test_consistency():
    z = simulate_stinar((0.5, 6, 3), 100_000, np.random.default_rng(34))
    rep = infer(z)
    assert abs(rep.alpha_hat - 0.5) < 5 * rep.se_alpha
    assert abs(rep.mu1_hat - 6) < 5 * rep.se_mu1
    assert abs(rep.mu2_hat - 3) < 5 * rep.se_mu2
    assert rep.se_alpha < 0.01
