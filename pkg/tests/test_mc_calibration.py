"""Tests for the seeded Monte Carlo engine"""
from types import SimpleNamespace

import numpy as np
import pytest

from qqcheck.config import Config
from qqcheck.distributions import Family
from qqcheck.exceptions import DomainError
from qqcheck.models import TestKind
from qqcheck.services import gof_tests, mc_calibration
from qqcheck.services.mc_calibration import MonteCarloEngine

DESK_REPS = 100000
SEED = 20200105
ALPHAS = (0.01, 0.05, 0.10)


@pytest.fixture(scope="module")
def engine():
    with MonteCarloEngine(Config()) as shared:
        yield shared


def power_by_alpha(engine, test, alternative):
    rows = engine.power_study(test, alternative, 20, ALPHAS, DESK_REPS, seed=SEED)
    return {row.alpha: row for row in rows}


def test_block_sizes():
    assert mc_calibration.block_sizes(10000, 4096) == [4096, 4096, 1808]
    assert mc_calibration.block_sizes(8192, 4096) == [4096, 4096]


def test_simulation_is_reproducible_and_independent_of_workers():
    with MonteCarloEngine(workers=1) as single, MonteCarloEngine(workers=4) as pooled:
        a = single.simulate_statistics(TestKind.CORRELATION_T, Family.NORMAL, 10, 10000, seed=1)
        b = pooled.simulate_statistics(TestKind.CORRELATION_T, Family.NORMAL, 10, 10000, seed=1)
        c = pooled.simulate_statistics(TestKind.CORRELATION_T, Family.NORMAL, 10, 10000, seed=2)
    assert a.shape == (10000,)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_streams_are_independent(engine):
    normal = engine.simulate_statistics(TestKind.SHAPIRO_WILK, Family.NORMAL, 10, 10000, seed=1)
    other = engine.simulate_statistics(TestKind.SHAPIRO_WILK, Family.NORMAL, 10, 10000, seed=1, stream=7)
    assert not np.array_equal(normal, other)


def test_simulation_preconditions(engine):
    with pytest.raises(DomainError):
        engine.simulate_statistics(TestKind.LILLIEFORS, Family.NORMAL, 10, 1000, seed=1)
    with pytest.raises(DomainError):
        engine.simulate_statistics(TestKind.CORRELATION_T, Family.NORMAL, 2, 10000, seed=1)


def test_null_distribution_is_sorted_and_cached(engine):
    first = engine.null_distribution(TestKind.LILLIEFORS, 9, 10000, seed=3)
    second = engine.null_distribution(TestKind.LILLIEFORS, 9, 10000, seed=3)
    assert first is second
    assert np.all(np.diff(first) >= 0)
    assert not first.flags.writeable


def test_engines_do_not_share_caches(engine):
    with MonteCarloEngine() as other:
        mine = engine.null_distribution(TestKind.LILLIEFORS, 9, 10000, seed=3)
        theirs = other.null_distribution(TestKind.LILLIEFORS, 9, 10000, seed=3)
    assert mine is not theirs
    assert np.array_equal(mine, theirs)


def test_empirical_quantile_and_critical_value():
    values = np.arange(1.0, 101.0)
    assert mc_calibration.empirical_quantile(values, 0.05) == 5.0
    assert mc_calibration.empirical_quantile(values, 0.0) == 1.0
    assert mc_calibration.empirical_quantile(values, 1.0) == 100.0
    assert mc_calibration.critical_value(TestKind.CORRELATION_T, values, 0.05) == 5.0
    assert mc_calibration.critical_value(TestKind.LILLIEFORS, values, 0.05) == 95.0


def test_rejection_rate():
    stats = np.array([1.0, 2.0, 3.0, 4.0])
    assert mc_calibration.rejection_rate(TestKind.CORRELATION_T, stats, 2.0) == 0.5
    assert mc_calibration.rejection_rate(TestKind.LILLIEFORS, stats, 3.0) == 0.25


def test_histogram_counts_finite_values():
    hist = mc_calibration.histogram(np.array([0.0, 0.5, 1.0, np.inf]), bins=2)
    assert hist.total == 3
    assert len(hist.edges) == 3


@pytest.mark.parametrize("n", [10, 14, 18, 20, 50])
def test_calibration_reproduces_published_null_parameters(engine, n):
    table = engine.calibrate_null(n, DESK_REPS, seed=SEED)
    mu, sigma = gof_tests.PUBLISHED_NULL_PARAMS[n]
    assert table.mu_n == pytest.approx(mu, abs=0.01)
    assert table.sigma_n == pytest.approx(sigma, abs=0.01)
    assert table.reps == DESK_REPS
    assert sorted(table.quantiles) == list(mc_calibration.CALIBRATION_LEVELS)
    assert table.histogram.total == DESK_REPS


def test_calibrated_location_grows_and_scale_shrinks_with_n(engine):
    tables = [engine.calibrate_null(n, DESK_REPS, seed=SEED) for n in (10, 14, 18, 26, 50)]
    mus = [t.mu_n for t in tables]
    sigmas = [t.sigma_n for t in tables]
    assert mus == sorted(mus)
    assert sigmas == sorted(sigmas, reverse=True)
    for table in tables:
        levels = sorted(table.quantiles)
        assert [table.quantiles[p] for p in levels] == sorted(table.quantiles.values())


def test_calibration_needs_five_observations(engine):
    with pytest.raises(DomainError):
        engine.calibrate_null(4, 10000, seed=1)


def test_fit_interpolation_recovers_rational_coefficients():
    tables = [SimpleNamespace(n=n,
                              mu_n=gof_tests.rational(gof_tests.INTERPOLATION_MU, n),
                              sigma_n=gof_tests.rational(gof_tests.INTERPOLATION_SIGMA, n))
              for n in range(10, 51, 4)]
    mu, sigma = mc_calibration.fit_interpolation(tables)
    assert mu == pytest.approx(gof_tests.INTERPOLATION_MU, rel=1e-6)
    assert sigma == pytest.approx(gof_tests.INTERPOLATION_SIGMA, rel=1e-6)


def test_fit_interpolation_on_tabulated_parameters():
    tables = [SimpleNamespace(n=n, mu_n=mu, sigma_n=sigma)
              for n, (mu, sigma) in sorted(gof_tests.PUBLISHED_NULL_PARAMS.items())]
    mu, sigma = mc_calibration.fit_interpolation(tables)
    for table in tables:
        assert gof_tests.rational(mu, table.n) == pytest.approx(table.mu_n, abs=0.005)
        assert gof_tests.rational(sigma, table.n) == pytest.approx(table.sigma_n, abs=0.005)
    assert gof_tests.rational(sigma, 13) == pytest.approx(0.6019, abs=1e-3)


def test_fit_interpolation_needs_three_tables():
    tables = [SimpleNamespace(n=n, mu_n=3.5, sigma_n=0.6) for n in (10, 11)]
    with pytest.raises(DomainError):
        mc_calibration.fit_interpolation(tables)


def test_null_size_matches_level_on_fresh_seed(engine):
    null_sorted = engine.null_distribution(TestKind.CORRELATION_T, 20, DESK_REPS, seed=11)
    critical = mc_calibration.critical_value(TestKind.CORRELATION_T, null_sorted, 0.05)
    fresh = engine.simulate_statistics(TestKind.CORRELATION_T, Family.NORMAL, 20, 20000, seed=12)
    assert mc_calibration.rejection_rate(TestKind.CORRELATION_T, fresh, critical) == pytest.approx(0.05, abs=0.01)


def test_power_of_correlation_test_against_gumbel(engine):
    rows = power_by_alpha(engine, TestKind.CORRELATION_T, Family.GUMBEL)
    for alpha, beta, critical in [(0.01, 0.8470, 2.6180), (0.05, 0.6931, 3.0045), (0.10, 0.5911, 3.2159)]:
        assert rows[alpha].beta == pytest.approx(beta, abs=0.01)
        assert rows[alpha].critical_value == pytest.approx(critical, abs=0.03)


def test_power_of_lilliefors_against_gumbel(engine):
    rows = power_by_alpha(engine, TestKind.LILLIEFORS, Family.GUMBEL)
    for alpha, beta, critical in [(0.01, 0.9215, 0.2230), (0.05, 0.7960, 0.1918), (0.10, 0.6984, 0.1762)]:
        assert rows[alpha].beta == pytest.approx(beta, abs=0.01)
        assert rows[alpha].critical_value == pytest.approx(critical, abs=0.003)


def test_power_of_lilliefors_against_logistic(engine):
    rows = power_by_alpha(engine, TestKind.LILLIEFORS, Family.LOGISTIC)
    assert rows[0.10].beta == pytest.approx(0.8485, abs=0.01)


def test_power_of_shapiro_wilk_against_gumbel(engine):
    rows = power_by_alpha(engine, TestKind.SHAPIRO_WILK, Family.GUMBEL)
    for alpha, beta, critical in [(0.01, 0.8409, 0.8672), (0.05, 0.6876, 0.9042), (0.10, 0.5850, 0.9199)]:
        assert rows[alpha].beta == pytest.approx(beta, abs=0.015)
        assert rows[alpha].critical_value == pytest.approx(critical, abs=0.005)


def test_logistic_is_harder_to_detect_than_gumbel(engine):
    gumbel = power_by_alpha(engine, TestKind.CORRELATION_T, Family.GUMBEL)
    logistic = power_by_alpha(engine, TestKind.CORRELATION_T, Family.LOGISTIC)
    for alpha in ALPHAS:
        assert gumbel[alpha].beta < logistic[alpha].beta


@pytest.mark.parametrize("alternative", [Family.GUMBEL, Family.LOGISTIC])
def test_correlation_test_beats_lilliefors(engine, alternative):
    correlation = power_by_alpha(engine, TestKind.CORRELATION_T, alternative)
    lilliefors = power_by_alpha(engine, TestKind.LILLIEFORS, alternative)
    for alpha in ALPHAS:
        assert lilliefors[alpha].beta > correlation[alpha].beta


def test_beta_falls_as_alpha_grows(engine):
    rows = power_by_alpha(engine, TestKind.SHAPIRO_WILK, Family.LOGISTIC)
    betas = [rows[alpha].beta for alpha in ALPHAS]
    assert betas == sorted(betas, reverse=True)


def test_power_study_preconditions(engine):
    with pytest.raises(DomainError):
        engine.power_study(TestKind.LILLIEFORS, Family.NORMAL, 20, (0.05,), 10000, seed=1)
    with pytest.raises(DomainError):
        engine.power_study(TestKind.LILLIEFORS, Family.LOGISTIC, 20, (1.5,), 10000, seed=1)


def test_compare_histograms_share_bins(engine):
    null_hist, alt_hist = engine.compare_histograms(TestKind.SHAPIRO_WILK, Family.LOGISTIC, 12,
                                                    10000, seed=4, bins=20)
    assert null_hist.edges == alt_hist.edges
    assert null_hist.total == alt_hist.total == 10000
