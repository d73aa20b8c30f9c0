"""
Sample model for qqcheck
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from ..exceptions import DataError, DomainError


class Transform(Enum):
    """Transformation applied to raw observations before fitting"""
    IDENTITY = "identity"
    LOG = "log"


@dataclass
class Sample:
    """A batch of real observations, e.g. yearly combined ratios of one line of business"""
    values: Sequence[float]
    transform: Transform = Transform.IDENTITY
    name: str = ""
    transformed: np.ndarray = field(init=False, repr=False)
    sorted: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        """Validate and derive the transformed, sorted values"""
        if not isinstance(self.transform, Transform):
            self.transform = Transform(self.transform)

        values = np.asarray(self.values, dtype=float).ravel()
        if values.size < 3:
            raise DomainError(f"a sample needs at least 3 observations, got {values.size}")
        if not np.all(np.isfinite(values)):
            raise DomainError("sample contains non-finite values")

        if self.transform is Transform.LOG:
            offenders = [(i + 1, f"nonpositive value {v!r}") for i, v in enumerate(values) if v <= 0]
            if offenders:
                raise DataError(
                    f"log transform needs positive values ({len(offenders)} offending)",
                    offenders,
                )
            transformed = np.log(values)
        else:
            transformed = values.copy()

        values.setflags(write=False)
        transformed.setflags(write=False)
        self.values = values
        self.transformed = transformed
        # Stable sort keeps ties in input order
        self.sorted = np.sort(transformed, kind='stable')
        self.sorted.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.values.size)
