"""
Q-Q regression results for qqcheck
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .positions import PlottingPositions


@dataclass(frozen=True)
class QQFit:
    """Least-squares line through the Q-Q plot (q_k, X_(k))"""
    mu_hat: float
    sigma_hat: float
    rho: Optional[float]
    positions: PlottingPositions
    observations: np.ndarray  # X_(k), ascending
    scale_only: bool = False
    degenerate: bool = False

    @property
    def n(self) -> int:
        return self.positions.n

    @property
    def family(self):
        return self.positions.family

    @property
    def fitted(self) -> np.ndarray:
        """Regression line evaluated at the plotting positions"""
        return self.mu_hat + self.sigma_hat * self.positions.q

    @property
    def residuals(self) -> np.ndarray:
        return self.observations - self.fitted

    def __str__(self) -> str:
        rho = "undefined" if self.rho is None else f"{self.rho:.6f}"
        return (
            f"Q-Q Fit (n={self.n}, {self.positions.method.value} positions):\n"
            f"Location (mu): {self.mu_hat:.6f}\n"
            f"Scale (sigma): {self.sigma_hat:.6f}\n"
            f"Correlation: {rho}"
            + ("\nDegenerate: yes" if self.degenerate else "")
        )


@dataclass(frozen=True)
class VaREstimate:
    """Value at Risk read off the regression line.

    When exponentiated the estimate is biased upwards (Jensen's inequality
    for exp); the bias is reported, not corrected.
    """
    alpha: float
    value: float
    log_value: float
    exponentiated: bool

    @property
    def upward_biased(self) -> bool:
        return self.exponentiated

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class LognormalSummary:
    """Moments of the lognormal model implied by a fit on log data"""
    mean: float
    variance: float
    median: float
    std_dev: float
