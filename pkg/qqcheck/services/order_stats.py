"""
Expected values of order statistics and plotting positions
"""
import logging
import math
import threading
import warnings
from typing import Tuple

import numpy as np
from cachetools import LRUCache, cached
from cachetools.keys import hashkey
from scipy import integrate, special

from .. import distributions
from ..distributions import Family
from ..exceptions import DomainError, NumericError, RangeWarning
from ..models.positions import PlottingPositions, PositionMethod

logger = logging.getLogger(__name__)

MAX_QUADRATURE_N = 400
QUADRATURE_BOUND = 9.0
QUADRATURE_TOLERANCE = 1e-6

# Rational-power fit of a_n, b_n in u_k = (k - a_n) / (n + b_n), valid for 3 <= n <= 100
_FULL_A = (0.27950585, 0.04684273, 0.34986981, -0.79499457)
_FULL_B = (0.44480354, 0.09890767, 0.36353365, -0.78493983)
_FULL_RANGE = (3, 100)
# Power-law fit, valid for n <= 20
_COMPACT_A = (0.3177, 0.0661)
_COMPACT_B = (0.3856, 0.1754)
_COMPACT_MAX_N = 20

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Shared between threads of the MC engine and the CLI
_quadrature_cache = LRUCache(maxsize=64 * 1024)
_quadrature_lock = threading.RLock()


def _check_index(n: int, k: int) -> None:
    if n < 1 or not 1 <= k <= n:
        raise DomainError(f"order statistic index out of range: n={n}, k={k}")


@cached(cache=_quadrature_cache, key=lambda n, k: hashkey(int(n), int(k)), lock=_quadrature_lock)
def expected_normal_order_stat(n: int, k: int) -> float:
    """E(Z_(k)) for n standard normals, by adaptive Gauss-Kronrod quadrature.

    The integrand k C(n,k) x Phi^{k-1}(x) (1-Phi(x))^{n-k} phi(x) is assembled
    in log space (log_ndtr, gammaln), so neither the binomial prefactor nor the
    power terms overflow or underflow for n up to 400. The domain is cut at
    +-9, where the normal tail mass is below 1e-18.
    """
    _check_index(n, k)
    if n > MAX_QUADRATURE_N:
        raise DomainError(f"quadrature supports n <= {MAX_QUADRATURE_N}, got {n}")

    log_prefactor = (math.log(k) + special.gammaln(n + 1)
                     - special.gammaln(k + 1) - special.gammaln(n - k + 1))

    def integrand(x: float) -> float:
        log_density = (log_prefactor
                       + (k - 1) * special.log_ndtr(x)
                       + (n - k) * special.log_ndtr(-x)
                       - 0.5 * x * x - _LOG_SQRT_2PI)
        return x * math.exp(log_density)

    # Blom's value marks where the density of Z_(k) peaks
    guess = float(special.ndtri((k - 0.375) / (n + 0.25)))
    result = integrate.quad(
        integrand, -QUADRATURE_BOUND, QUADRATURE_BOUND,
        points=[guess], epsabs=1e-10, epsrel=1e-10, limit=200, full_output=1,
    )
    value, abserr, info = result[0], result[1], result[2]
    if len(result) > 3:
        logger.debug("quadrature note for n=%d, k=%d: %s", n, k, result[3])
    if not math.isfinite(value) or abserr > QUADRATURE_TOLERANCE:
        diagnostics = {
            'n': n,
            'k': k,
            'estimate': value,
            'abserr': abserr,
            'evaluations': info.get('neval'),
            'message': result[3] if len(result) > 3 else None,
        }
        raise NumericError(f"quadrature for E(Z_({k})) with n={n} did not converge", diagnostics)

    logger.debug("E(Z_(%d)) for n=%d: %.10f (abserr %.2e)", k, n, value, abserr)
    return value


def expected_normal_order_stats(n: int) -> np.ndarray:
    """E(Z_(1)), ..., E(Z_(n)) for the standard normal"""
    return np.array([expected_normal_order_stat(n, k) for k in range(1, n + 1)])


def expected_exponential_order_stat(n: int, k: int) -> float:
    """E(Z_(k)) = sum_{i=1}^{k} 1/(n+1-i) for n unit exponentials"""
    _check_index(n, k)
    return math.fsum(1.0 / (n + 1 - i) for i in range(1, k + 1))


def expected_exponential_order_stats(n: int) -> np.ndarray:
    _check_index(n, 1)
    return np.cumsum(1.0 / np.arange(n, 0, -1, dtype=float))


def exponential_positions(n: int, exact: bool = True) -> np.ndarray:
    """Plotting positions for the unit exponential.

    Exact mode uses u_k = 1 - exp(-E(Z_(k))); the approximate mode is the
    Weibull rule k/(n+1), which the harmonic-sum estimate
    H_m ~ ln(m+1) + Euler's constant turns the exact formula into.
    """
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if exact:
        return -np.expm1(-expected_exponential_order_stats(n))
    return np.arange(1, n + 1, dtype=float) / (n + 1)


def fitted_ab(n: int, compact: bool = False) -> Tuple[float, float]:
    """Offsets (a_n, b_n) approximating E(Z_(k)) by Phi^{-1}((k - a_n)/(n + b_n))"""
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")

    if compact:
        if n > _COMPACT_MAX_N:
            warnings.warn(f"compact offsets are fitted for n <= {_COMPACT_MAX_N}, got n={n}",
                          RangeWarning, stacklevel=2)
        a = _COMPACT_A[0] * n ** _COMPACT_A[1]
        b = _COMPACT_B[0] / n ** _COMPACT_B[1]
        return a, b

    low, high = _FULL_RANGE
    if not low <= n <= high:
        warnings.warn(f"fitted offsets are valid for {low} <= n <= {high}, got n={n}",
                      RangeWarning, stacklevel=2)
    c0, c1, c2, c3 = _FULL_A
    a = c0 + c1 / (c2 + n ** c3)
    c0, c1, c2, c3 = _FULL_B
    b = c0 - c1 / (c2 + n ** c3)
    return a, b


def _offset_positions(n: int, a: float, b: float) -> np.ndarray:
    return (np.arange(1, n + 1, dtype=float) - a) / (n + b)


def plotting_positions(family: Family, n: int, method: PositionMethod) -> PlottingPositions:
    """Levels u_k and quantiles Q_Z(u_k) for a family, sample size and method.

    Weibull positions work for every family. The named offset rules and the
    fitted offsets approximate normal order statistics and are normal only;
    exact expectations exist for the normal (quadrature) and the exponential
    (harmonic sums).
    """
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if not isinstance(method, PositionMethod):
        method = PositionMethod(method)

    if method is PositionMethod.EXACT_EXPECTATION:
        if family is Family.NORMAL:
            q = expected_normal_order_stats(n)
            u = distributions.cdf(family, q)
        elif family is Family.EXPONENTIAL:
            q = expected_exponential_order_stats(n)
            u = exponential_positions(n, exact=True)
        else:
            raise DomainError(f"exact expectations are not available for the {family.value} family")
        return PlottingPositions(family, n, method, u, q)

    if method is PositionMethod.WEIBULL:
        u = _offset_positions(n, 0.0, 1.0)
    elif family is not Family.NORMAL:
        raise DomainError(f"{method.value} positions approximate normal order statistics only")
    elif method in (PositionMethod.FITTED_AB, PositionMethod.COMPACT_AB):
        a, b = fitted_ab(n, compact=method is PositionMethod.COMPACT_AB)
        u = _offset_positions(n, a, b)
    else:
        a, b = method.offsets
        u = _offset_positions(n, a, b)

    q = distributions.quantile(family, u)
    return PlottingPositions(family, n, method, u, np.asarray(q, dtype=float))
