"""
Test and calibration result models for qqcheck
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from ..distributions import Family


class TestKind(Enum):
    """Goodness-of-fit tests for normality"""
    __test__ = False  # not a pytest class

    CORRELATION_T = "correlation"
    LILLIEFORS = "lilliefors"
    SHAPIRO_WILK = "shapiro-wilk"

    @property
    def left_tailed(self) -> bool:
        """Small values reject for T_n and W_n, large values for d_n"""
        return self is not TestKind.LILLIEFORS

    @property
    def symbol(self) -> str:
        return {'correlation': 'T_n', 'lilliefors': 'd_n', 'shapiro-wilk': 'W_n'}[self.value]


class PValueMethod(Enum):
    NORMAL_APPROX = "approx"
    MONTE_CARLO = "mc"


class NullSource(Enum):
    """Where the normal approximation of the null law of T_n comes from"""
    TABLE = "table"
    INTERPOLATION = "interpolation"
    MONTE_CARLO = "mc"


@dataclass(frozen=True)
class GofResult:
    """Outcome of one goodness-of-fit test on one sample"""
    test: TestKind
    statistic: float
    p_value: float
    p_method: PValueMethod
    n: int
    reject_at: Dict[float, bool] = field(default_factory=dict)
    perfect_fit: bool = False

    def __post_init__(self):
        """Validate p-value and derive decisions"""
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p-value must lie in [0, 1], got {self.p_value}")
        decisions = {float(a): self.p_value < a for a in self.reject_at}
        object.__setattr__(self, 'reject_at', decisions)

    @classmethod
    def decide(cls, test: TestKind, statistic: float, p_value: float,
               p_method: PValueMethod, n: int, alphas: Sequence[float],
               perfect_fit: bool = False) -> 'GofResult':
        """Build a result with decisions at the given levels"""
        return cls(test, statistic, p_value, p_method, n,
                   {float(a): p_value < a for a in alphas}, perfect_fit)

    def __str__(self) -> str:
        decisions = ", ".join(
            f"{alpha:.0%}: {'reject' if rejected else 'accept'}"
            for alpha, rejected in sorted(self.reject_at.items())
        )
        return (
            f"{self.test.value} ({self.test.symbol}={self.statistic:.4f}, n={self.n}): "
            f"p={self.p_value:.2%} [{self.p_method.value}]"
            + (f" {decisions}" if decisions else "")
        )


@dataclass(frozen=True)
class NullParams:
    """Normal approximation N(mu_n, sigma_n^2) of the null law of T_n"""
    n: int
    mu_n: float
    sigma_n: float
    source: NullSource

    def __post_init__(self):
        if not self.sigma_n > 0.0:
            raise ValueError(f"sigma_n must be positive, got {self.sigma_n}")


@dataclass(frozen=True)
class Histogram:
    """Binned counts for rendering"""
    edges: Tuple[float, ...]
    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return int(sum(self.counts))


@dataclass(frozen=True)
class CalibrationTable:
    """Simulated null distribution of T_n for one sample size"""
    n: int
    reps: int
    seed: int
    mu_n: float
    sigma_n: float
    quantiles: Dict[float, float]
    histogram: Histogram

    def __post_init__(self):
        levels = sorted(self.quantiles)
        values = [self.quantiles[p] for p in levels]
        if any(b < a for a, b in zip(values, values[1:])):
            raise ValueError("calibration quantiles must be monotone in probability")

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'reps': self.reps,
            'seed': self.seed,
            'mu_n': self.mu_n,
            'sigma_n': self.sigma_n,
            'quantiles': {f"{p:g}": v for p, v in sorted(self.quantiles.items())},
            'histogram': {'edges': list(self.histogram.edges),
                          'counts': list(self.histogram.counts)},
        }


@dataclass(frozen=True)
class PowerRow:
    """Type-II error rate of one test against one alternative at one level"""
    test: TestKind
    alternative: Family
    n: int
    alpha: float
    critical_value: float
    beta: float
    reps: int
    seed: int

    def to_dict(self) -> Dict:
        return {
            'test': self.test.value,
            'alternative': self.alternative.value,
            'n': self.n,
            'alpha': self.alpha,
            'critical_value': self.critical_value,
            'beta': self.beta,
            'reps': self.reps,
            'seed': self.seed,
        }


@dataclass
class DatasetResults:
    """All test results for one dataset (one row of the results table)"""
    dataset: str
    n: int
    results: List[GofResult]
    fit: Optional[object] = None
