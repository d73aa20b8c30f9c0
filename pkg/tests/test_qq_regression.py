"""Tests for Q-Q regression fits and VaR estimation"""
import math

import numpy as np
import pytest
from scipy import special

from qqcheck.distributions import Family
from qqcheck.exceptions import DataError, DegenerateFitError, DomainError
from qqcheck.models import PositionMethod, Sample, Transform
from qqcheck.services import order_stats, qq_regression
from qqcheck.services.mc_calibration import block_generator


def normal_positions(n, method=PositionMethod.FITTED_AB):
    return order_stats.plotting_positions(Family.NORMAL, n, method)


def test_exact_line_is_recovered():
    positions = normal_positions(8)
    sample = Sample(2.0 + 3.0 * positions.q)
    fit = qq_regression.fit(sample, positions)
    assert fit.mu_hat == pytest.approx(2.0, abs=1e-12)
    assert fit.sigma_hat == pytest.approx(3.0, abs=1e-12)
    assert fit.rho == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(fit.residuals, 0.0, atol=1e-12)


def test_affine_equivariance():
    rng = np.random.default_rng(11)
    x = rng.normal(size=15)
    positions = normal_positions(15)
    base = qq_regression.fit(Sample(x), positions)
    moved = qq_regression.fit(Sample(-4.0 + 2.5 * x), positions)
    assert moved.mu_hat == pytest.approx(-4.0 + 2.5 * base.mu_hat, rel=1e-10)
    assert moved.sigma_hat == pytest.approx(2.5 * base.sigma_hat, rel=1e-10)
    assert moved.rho == pytest.approx(base.rho, rel=1e-10)


def test_log_transform_fits_log_values():
    positions = normal_positions(5)
    values = np.exp(0.1 + 0.2 * positions.q)
    fit = qq_regression.fit(Sample(values, Transform.LOG), positions)
    assert fit.mu_hat == pytest.approx(0.1)
    assert fit.sigma_hat == pytest.approx(0.2)


def test_log_transform_reports_nonpositive_values():
    with pytest.raises(DataError) as excinfo:
        Sample([1.0, 0.0, 2.0, -1.0], Transform.LOG)
    assert [line for line, _ in excinfo.value.diagnostics] == [2, 4]


def test_sample_needs_three_values():
    with pytest.raises(DomainError):
        Sample([1.0, 2.0])


def test_degenerate_sample():
    positions = normal_positions(5)
    fit = qq_regression.fit(Sample([1.5] * 5), positions)
    assert fit.degenerate
    assert fit.sigma_hat == 0.0
    assert fit.rho is None
    assert fit.mu_hat == 1.5
    with pytest.raises(DegenerateFitError):
        qq_regression.var_estimate(fit, 0.005)


def test_size_mismatch():
    with pytest.raises(DomainError):
        qq_regression.fit(Sample([1.0, 2.0, 3.0, 4.0]), normal_positions(5))


def test_scale_only_fit():
    positions = order_stats.plotting_positions(Family.EXPONENTIAL, 6, PositionMethod.EXACT_EXPECTATION)
    fit = qq_regression.fit_scale_only(Sample(2.0 * positions.q), positions)
    assert fit.scale_only
    assert fit.mu_hat == 0.0
    assert fit.sigma_hat == pytest.approx(2.0)
    assert fit.rho == pytest.approx(1.0)


def test_var_estimate():
    positions = normal_positions(10)
    fit = qq_regression.fit(Sample(1.0 + 0.5 * positions.q), positions)
    var = qq_regression.var_estimate(fit, 0.005)
    assert var.value == pytest.approx(1.0 + 0.5 * 2.5758293035489, rel=1e-9)
    assert not var.upward_biased

    var_exp = qq_regression.var_estimate(fit, 0.005, exponentiate=True)
    assert var_exp.value == pytest.approx(math.exp(var.log_value))
    assert var_exp.upward_biased
    assert float(var_exp) == var_exp.value


@pytest.mark.parametrize("alpha", [0.0, 1.0, -0.2])
def test_var_estimate_rejects_bad_levels(alpha):
    positions = normal_positions(5)
    fit = qq_regression.fit(Sample([0.1, 0.4, 0.5, 0.9, 1.3]), positions)
    with pytest.raises(DomainError):
        qq_regression.var_estimate(fit, alpha)


def test_lognormal_moments():
    positions = normal_positions(10)
    fit = qq_regression.fit(Sample(0.2 + 0.3 * positions.q), positions)
    moments = qq_regression.lognormal_moments(fit)
    assert moments.median == pytest.approx(math.exp(0.2))
    assert moments.mean == pytest.approx(math.exp(0.2 + 0.045))
    assert moments.variance == pytest.approx((math.exp(0.09) - 1.0) * math.exp(0.4 + 0.09))
    assert moments.std_dev == pytest.approx(math.sqrt(moments.variance))


def test_batch_fit_matches_single_fits():
    rng = np.random.default_rng(5)
    positions = normal_positions(7)
    x = np.sort(rng.normal(size=(4, 7)), axis=1)
    batch = qq_regression.batch_fit(x, positions)
    for row, (mu, sigma) in zip(x, batch):
        fit = qq_regression.fit(Sample(row), positions)
        assert mu == pytest.approx(fit.mu_hat, abs=1e-12)
        assert sigma == pytest.approx(fit.sigma_hat, abs=1e-12)


@pytest.mark.parametrize("n", [5, 10, 20])
def test_estimators_are_unbiased_with_exact_positions(n):
    reps = 100000
    mu, sigma, alpha = 1.0, 0.25, 0.005
    positions = normal_positions(n, PositionMethod.EXACT_EXPECTATION)
    x = np.sort(mu + sigma * block_generator(777, 0, n).standard_normal((reps, n)), axis=1)
    estimates = qq_regression.batch_fit(x, positions)
    z = special.ndtri(1.0 - alpha)
    var_hat = estimates[:, 0] + estimates[:, 1] * z

    def within_three_se(values, truth):
        se = values.std(ddof=1) / math.sqrt(reps)
        return abs(values.mean() - truth) < 3.0 * se

    assert within_three_se(estimates[:, 0], mu)
    assert within_three_se(estimates[:, 1], sigma)
    assert within_three_se(var_hat, mu + sigma * z)

    # exp(VaR) overestimates exp of the true VaR
    exp_var = np.exp(var_hat)
    excess = exp_var.mean() - math.exp(mu + sigma * z)
    assert excess > 3.0 * exp_var.std(ddof=1) / math.sqrt(reps)


def test_scale_only_estimator_is_unbiased_for_exponential_data():
    n, reps, sigma = 10, 100000, 2.0
    positions = order_stats.plotting_positions(Family.EXPONENTIAL, n, PositionMethod.EXACT_EXPECTATION)
    x = np.sort(sigma * block_generator(778, 0, n).standard_exponential((reps, n)), axis=1)
    estimates = qq_regression.batch_fit(x, positions, scale_only=True)
    assert np.all(estimates[:, 0] == 0.0)
    assert estimates[:, 1].mean() == pytest.approx(sigma, abs=0.01)


@pytest.mark.parametrize("n", [5, 10, 20])
def test_exponential_estimators_are_unbiased_with_exact_positions(n):
    reps = 100000
    mu, sigma = 0.5, 2.0
    positions = order_stats.plotting_positions(Family.EXPONENTIAL, n, PositionMethod.EXACT_EXPECTATION)
    x = np.sort(mu + sigma * block_generator(779, 0, n).standard_exponential((reps, n)), axis=1)
    estimates = qq_regression.batch_fit(x, positions)
    for column, truth in ((0, mu), (1, sigma)):
        se = estimates[:, column].std(ddof=1) / math.sqrt(reps)
        assert abs(estimates[:, column].mean() - truth) < 3.0 * se
