"""
Seeded Monte Carlo engine for null calibration and power studies
"""
import logging
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
from cachetools import LRUCache
from cachetools.keys import hashkey
from scipy import optimize

from .. import distributions
from ..config import Config
from ..distributions import Family
from ..exceptions import DomainError, NumericError
from ..models.results import CalibrationTable, Histogram, PowerRow, TestKind
from .gof_tests import statistic_kernel

logger = logging.getLogger(__name__)

CALIBRATION_LEVELS = (0.01, 0.05, 0.10, 0.50, 0.90, 0.95, 0.99)
POWER_ALTERNATIVES = (Family.GUMBEL, Family.LOGISTIC)
HISTOGRAM_BINS = 60
NULL_STREAM = 0


def stream_for(family: Family) -> int:
    """Generator stream of a sampling family; the normal null is stream 0"""
    return list(Family).index(family)


def block_generator(seed: int, stream: int, block: int) -> np.random.Generator:
    """Independent generator for one block, derived from (seed, stream, block) only"""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream, block))))


def block_sizes(reps: int, block_size: int) -> List[int]:
    full, rest = divmod(reps, block_size)
    return [block_size] * full + ([rest] if rest else [])


def empirical_quantile(sorted_values: np.ndarray, p: float) -> float:
    """Order statistic number ceil(p * reps) of the simulated values"""
    reps = sorted_values.size
    index = min(max(math.ceil(p * reps - 1e-9), 1), reps)
    return float(sorted_values[index - 1])


def critical_value(test: TestKind, null_sorted: np.ndarray, alpha: float) -> float:
    """Empirical critical value at level alpha for the test's rejection tail"""
    return empirical_quantile(null_sorted, alpha if test.left_tailed else 1.0 - alpha)


def rejection_rate(test: TestKind, statistics: np.ndarray, critical: float) -> float:
    """Fraction of statistics in the rejection region of `test` at `critical`"""
    statistics = np.asarray(statistics)
    if test.left_tailed:
        return float(np.mean(statistics <= critical))
    return float(np.mean(statistics > critical))


def histogram(values: np.ndarray, bins: int = HISTOGRAM_BINS,
              value_range: Optional[Tuple[float, float]] = None) -> Histogram:
    finite = values[np.isfinite(values)]
    counts, edges = np.histogram(finite, bins=bins, range=value_range)
    return Histogram(tuple(float(e) for e in edges), tuple(int(c) for c in counts))


def fit_interpolation(tables: Sequence) -> Tuple[Tuple[float, float, float], Tuple[float, float, float]]:
    """Fit (p n + q)/(n + r) to (n, mu_n) and to (n, sigma_n).

    `tables` are calibration tables or anything else with n, mu_n and
    sigma_n. The model is linear after multiplying out,
    y n = p n + q - r y, which gives the starting point; with more than three
    points the plain residuals are then minimized with least squares.
    """
    if len(tables) < 3:
        raise DomainError(f"the rational model has 3 coefficients; got {len(tables)} tables")
    n = np.array([t.n for t in tables], dtype=float)

    def fit_one(y: np.ndarray, label: str) -> Tuple[float, float, float]:
        design = np.column_stack([n, np.ones_like(n), -y])
        coeffs, _, rank, _ = np.linalg.lstsq(design, y * n, rcond=None)
        if rank < 3:
            raise NumericError(f"interpolation of {label} is rank deficient",
                               {'rank': int(rank), 'n': n.tolist()})
        if len(y) > 3:
            solution = optimize.least_squares(
                lambda c: (c[0] * n + c[1]) / (n + c[2]) - y, coeffs, method='lm')
            if not solution.success:
                raise NumericError(f"interpolation of {label} did not converge",
                                   {'message': solution.message, 'start': coeffs.tolist()})
            coeffs = solution.x
        return tuple(float(c) for c in coeffs)

    mu = fit_one(np.array([t.mu_n for t in tables], dtype=float), 'mu_n')
    sigma = fit_one(np.array([t.sigma_n for t in tables], dtype=float), 'sigma_n')
    return mu, sigma



class MonteCarloEngine:
    """Seeded, block-parallel simulation of test statistics.

    Owns the worker pool and a memo of sorted null distributions keyed by
    (test, n, reps, seed). Results depend only on the seed, never on the
    number of workers.
    """

    def __init__(self, config: Optional[Config] = None, workers: Optional[int] = None):
        self.config = config or Config()
        self.workers = workers or self.config.WORKERS
        self.executor = ThreadPoolExecutor(max_workers=self.workers)
        self.null_cache = LRUCache(maxsize=self.config.CACHE_SIZE)
        self._lock = threading.RLock()

    def __enter__(self) -> 'MonteCarloEngine':
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    def close(self) -> None:
        self.executor.shutdown(wait=True)

    def _check_run(self, n: int, reps: int) -> None:
        if n < 3:
            raise DomainError(f"simulation needs n >= 3, got {n}")
        if reps < self.config.MIN_REPS:
            raise DomainError(f"reps must be at least {self.config.MIN_REPS}, got {reps}")

    def simulate_statistics(self, test: TestKind, family: Family, n: int, reps: int, seed: int,
                            stream: Optional[int] = None) -> np.ndarray:
        """Statistic of `test` on `reps` samples of size n drawn from `family`.

        Replications run in fixed-size blocks; each block owns a generator
        derived from (seed, stream, block index) and results are concatenated in
        block order.
        """
        self._check_run(n, reps)
        stream = stream_for(family) if stream is None else stream
        kernel = statistic_kernel(test, n)
        sizes = block_sizes(reps, self.config.BLOCK_SIZE)

        def run_block(index: int) -> np.ndarray:
            rng = block_generator(seed, stream, index)
            m = sizes[index]
            x = distributions.sample(family, m * n, rng).reshape(m, n)
            x.sort(axis=1)
            logger.debug("block %d/%d done (%d samples)", index + 1, len(sizes), m)
            return kernel(x)

        logger.info("Simulating %s under %s: n=%d, reps=%d, seed=%d",
                    test.value, family.value, n, reps, seed)
        return np.concatenate(list(self.executor.map(run_block, range(len(sizes)))))

    def null_distribution(self, test: TestKind, n: int, reps: int, seed: int) -> np.ndarray:
        """Sorted simulated null statistics (normal samples), read-only and memoized"""
        key = hashkey(test, n, reps, seed, self.config.BLOCK_SIZE)
        with self._lock:
            cached = self.null_cache.get(key)
        if cached is not None:
            return cached

        values = np.sort(self.simulate_statistics(test, Family.NORMAL, n, reps, seed, NULL_STREAM))
        values.setflags(write=False)
        with self._lock:
            self.null_cache[key] = values
        return values

    def calibrate_null(self, n: int, reps: int, seed: int, bins: int = HISTOGRAM_BINS) -> CalibrationTable:
        """Simulate T_n under normality and summarize it by (mu_n, sigma_n) and quantiles"""
        if n < 5:
            raise DomainError(f"calibration needs n >= 5, got {n}")
        null_sorted = self.null_distribution(TestKind.CORRELATION_T, n, reps, seed)
        finite = null_sorted[np.isfinite(null_sorted)]
        if finite.size < null_sorted.size:
            logger.warning("%d perfect fits excluded from the moments", null_sorted.size - finite.size)

        table = CalibrationTable(
            n=n,
            reps=reps,
            seed=seed,
            mu_n=float(np.mean(finite)),
            sigma_n=float(np.std(finite, ddof=1)),
            quantiles={p: empirical_quantile(null_sorted, p) for p in CALIBRATION_LEVELS},
            histogram=histogram(finite, bins),
        )
        logger.info("Calibrated n=%d: mu=%.4f, sigma=%.4f", n, table.mu_n, table.sigma_n)
        return table

    def power_study(self, test: TestKind, alternative: Family, n: int, alphas: Sequence[float],
                    reps: int, seed: int) -> List[PowerRow]:
        """Type-II error rates of `test` against `alternative` at each level.

        Critical values are empirical quantiles of a null simulation; beta is
        the share of alternative samples whose statistic falls in the
        acceptance region.
        """
        if alternative not in POWER_ALTERNATIVES:
            raise DomainError(f"alternatives are {[f.value for f in POWER_ALTERNATIVES]}, "
                              f"got {alternative.value}")
        if not alphas or not all(0.0 < a < 1.0 for a in alphas):
            raise DomainError(f"alphas must lie in (0, 1), got {list(alphas)}")

        null_sorted = self.null_distribution(test, n, reps, seed)
        alt = self.simulate_statistics(test, alternative, n, reps, seed)

        rows = []
        for alpha in sorted(alphas):
            critical = critical_value(test, null_sorted, alpha)
            beta = 1.0 - rejection_rate(test, alt, critical)
            rows.append(PowerRow(test, alternative, n, float(alpha), critical, beta, reps, seed))
            logger.info("%s vs %s, n=%d, alpha=%g: critical=%.4f, beta=%.4f",
                        test.value, alternative.value, n, alpha, critical, beta)
        return rows

    def compare_histograms(self, test: TestKind, alternative: Family, n: int, reps: int, seed: int,
                           bins: int = HISTOGRAM_BINS) -> Tuple[Histogram, Histogram]:
        """Null and alternative histograms of a statistic on common bins"""
        null_sorted = self.null_distribution(test, n, reps, seed)
        alt = self.simulate_statistics(test, alternative, n, reps, seed)
        both = np.concatenate([null_sorted, alt])
        both = both[np.isfinite(both)]
        value_range = (float(both.min()), float(both.max()))
        return histogram(null_sorted, bins, value_range), histogram(alt, bins, value_range)
