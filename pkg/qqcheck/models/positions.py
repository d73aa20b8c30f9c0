"""
Plotting position models for qqcheck
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from ..distributions import Family


class PositionMethod(Enum):
    """How the probability levels u_k of a Q-Q plot are chosen"""
    EXACT_EXPECTATION = "exact"
    HAZEN = "hazen"  # classical rule, (k - 0.5) / n
    HAZEN_TABLE = "hazen-table"  # as printed in the usual comparison table, (k - 0.5) / (n + 1)
    WEIBULL = "weibull"
    BEARD = "beard"
    BENARD_BOS_LEVENBACH = "benard"
    BLOM = "blom"
    TUKEY = "tukey"
    GRINGORTEN = "gringorten"
    FITTED_AB = "fitted"
    COMPACT_AB = "compact"

    @property
    def offsets(self) -> Optional[Tuple[float, float]]:
        """(a, b) in u_k = (k - a) / (n + b), for the named rules"""
        return _NAMED_OFFSETS.get(self)

    @property
    def symmetric(self) -> bool:
        """True when u_k + u_{n+1-k} = 1 for every n"""
        if self is PositionMethod.EXACT_EXPECTATION:
            return True
        offsets = self.offsets
        return offsets is not None and abs(1.0 - 2.0 * offsets[0] - offsets[1]) < 1e-12


_NAMED_OFFSETS = {
    PositionMethod.HAZEN: (0.5, 0.0),
    PositionMethod.HAZEN_TABLE: (0.5, 1.0),
    PositionMethod.WEIBULL: (0.0, 1.0),
    PositionMethod.BEARD: (0.31, 0.38),
    PositionMethod.BENARD_BOS_LEVENBACH: (0.30, 0.20),
    PositionMethod.BLOM: (0.375, 0.25),
    PositionMethod.TUKEY: (0.333, 0.333),
    PositionMethod.GRINGORTEN: (0.44, 0.12),
}


@dataclass(frozen=True)
class PlottingPositions:
    """Abscissa of a Q-Q plot: levels u_k and quantiles q_k = Q_Z(u_k)"""
    family: Family
    n: int
    method: PositionMethod
    u: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        """Validate shapes and ordering"""
        u = np.asarray(self.u, dtype=float)
        q = np.asarray(self.q, dtype=float)
        if u.shape != (self.n,) or q.shape != (self.n,):
            raise ValueError(f"expected {self.n} positions, got u{u.shape} and q{q.shape}")
        if not (np.all(u > 0.0) and np.all(u < 1.0)):
            raise ValueError("plotting positions must lie in (0, 1)")
        if np.any(np.diff(u) <= 0.0):
            raise ValueError("plotting positions must be strictly increasing")
        u.setflags(write=False)
        q.setflags(write=False)
        object.__setattr__(self, 'u', u)
        object.__setattr__(self, 'q', q)

    def __len__(self) -> int:
        return self.n
