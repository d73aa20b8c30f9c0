"""
Least-squares fitting of Q-Q plots and VaR estimation from the fitted line
"""
import logging
import math

import numpy as np

from .. import distributions
from ..exceptions import DegenerateFitError, DomainError
from ..models.fit import LognormalSummary, QQFit, VaREstimate
from ..models.positions import PlottingPositions
from ..models.sample import Sample

logger = logging.getLogger(__name__)


def _check_sizes(sample: Sample, positions: PlottingPositions) -> None:
    if sample.n != positions.n:
        raise DomainError(f"sample has {sample.n} values but positions cover n={positions.n}")
    if sample.n < 3:
        raise DomainError(f"fitting needs n >= 3, got {sample.n}")


def fit(sample: Sample, positions: PlottingPositions) -> QQFit:
    """Regression line X_(k) = mu + sigma q_k through the Q-Q plot.

    With u_k = F_Z(E(Z_(k))) the intercept and slope are unbiased for mu and
    sigma. Centered sums use math.fsum so that repeated calls from the Monte
    Carlo engine do not accumulate rounding error.
    """
    _check_sizes(sample, positions)
    x = sample.sorted
    q = positions.q
    n = sample.n

    x_bar = math.fsum(x) / n
    q_bar = math.fsum(q) / n
    xc = x - x_bar
    qc = q - q_bar
    s_qq = math.fsum(qc * qc)
    s_xx = math.fsum(xc * xc)
    s_qx = math.fsum(qc * xc)

    if s_qq <= 0.0:
        raise DomainError("plotting positions are all equal")

    sigma_hat = s_qx / s_qq
    mu_hat = x_bar - sigma_hat * q_bar

    if s_xx <= 0.0:
        logger.warning("Degenerate sample (all %d values equal); correlation undefined", n)
        return QQFit(mu_hat=x_bar, sigma_hat=0.0, rho=None, positions=positions,
                     observations=x, degenerate=True)

    rho = s_qx / math.sqrt(s_qq * s_xx)
    rho = min(1.0, max(-1.0, rho))
    return QQFit(mu_hat=mu_hat, sigma_hat=sigma_hat, rho=rho,
                 positions=positions, observations=x)


def fit_scale_only(sample: Sample, positions: PlottingPositions) -> QQFit:
    """Line through the origin, sigma = sum X_(k) q_k / sum q_k^2, for pure scale families"""
    _check_sizes(sample, positions)
    x = sample.sorted
    q = positions.q

    s_qq = math.fsum(q * q)
    if s_qq <= 0.0:
        raise DomainError("all plotting quantiles are zero")
    sigma_hat = math.fsum(q * x) / s_qq

    s_xx = math.fsum(x * x)
    if s_xx <= 0.0:
        logger.warning("Degenerate sample (all values zero) in scale-only fit")
        return QQFit(mu_hat=0.0, sigma_hat=0.0, rho=None, positions=positions,
                     observations=x, scale_only=True, degenerate=True)

    xc = x - x.mean()
    qc = q - q.mean()
    denom = math.sqrt(math.fsum(qc * qc) * math.fsum(xc * xc))
    rho = min(1.0, max(-1.0, math.fsum(qc * xc) / denom)) if denom > 0.0 else None
    return QQFit(mu_hat=0.0, sigma_hat=sigma_hat, rho=rho, positions=positions,
                 observations=x, scale_only=True, degenerate=rho is None)


def var_estimate(fit_result: QQFit, alpha: float, exponentiate: bool = False) -> VaREstimate:
    """VaR_alpha = mu + sigma Q_Z(1 - alpha) read off the regression line.

    Unbiased on the fitted scale. With exponentiate=True the value is
    exp(VaR) for log-transformed data, which overestimates on average.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if fit_result.degenerate:
        raise DegenerateFitError("VaR is undefined for a degenerate fit")

    log_value = fit_result.mu_hat + fit_result.sigma_hat * distributions.quantile(
        fit_result.family, 1.0 - alpha)
    value = math.exp(log_value) if exponentiate else log_value
    return VaREstimate(alpha=alpha, value=value, log_value=log_value, exponentiated=exponentiate)


def lognormal_moments(fit_result: QQFit) -> LognormalSummary:
    """Mean, variance and median of exp(X) when X ~ N(mu_hat, sigma_hat^2)"""
    if fit_result.degenerate:
        raise DegenerateFitError("moments are undefined for a degenerate fit")
    mu, sigma = fit_result.mu_hat, fit_result.sigma_hat
    s2 = sigma * sigma
    mean = math.exp(mu + 0.5 * s2)
    variance = math.expm1(s2) * math.exp(2.0 * mu + s2)
    return LognormalSummary(mean=mean, variance=variance, median=math.exp(mu),
                            std_dev=math.sqrt(variance))


def batch_fit(sorted_matrix: np.ndarray, positions: PlottingPositions,
              scale_only: bool = False) -> np.ndarray:
    """Vectorized (mu_hat, sigma_hat) for each row of sorted samples; shape (m, 2)"""
    x = np.asarray(sorted_matrix, dtype=float)
    if x.ndim != 2 or x.shape[1] != positions.n:
        raise DomainError(f"expected rows of length {positions.n}, got shape {x.shape}")
    q = positions.q
    if scale_only:
        sigma = x @ q / float(q @ q)
        return np.column_stack([np.zeros_like(sigma), sigma])
    qc = q - q.mean()
    sigma = (x - x.mean(axis=1, keepdims=True)) @ qc / float(qc @ qc)
    mu = x.mean(axis=1) - sigma * q.mean()
    return np.column_stack([mu, sigma])
