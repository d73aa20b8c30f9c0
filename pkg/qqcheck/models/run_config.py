"""
Command-line run configuration for qqcheck
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Tuple

from ..exceptions import DomainError
from .positions import PositionMethod
from .results import PValueMethod
from .sample import Transform


@dataclass
class RunConfig:
    """Settings of one `qqcheck test` invocation"""
    inputs: List[Path]
    out: Path
    seed: int
    reps: int
    min_reps: int = 10000
    columns: List[str] = field(default_factory=list)
    transform: Transform = Transform.LOG
    positions: PositionMethod = PositionMethod.FITTED_AB
    alphas: Tuple[float, ...] = (0.01, 0.05, 0.10)
    p_method: PValueMethod = PValueMethod.NORMAL_APPROX
    formats: Tuple[str, ...] = ('text', 'csv', 'json', 'svg')
    decimal_comma: bool = False
    published: List[Tuple[float, int]] = field(default_factory=list)
    var_alpha: float = 0.005

    def __post_init__(self):
        """Validate and normalize settings"""
        self.inputs = [Path(p) for p in self.inputs]
        self.out = Path(self.out)
        if not isinstance(self.transform, Transform):
            self.transform = Transform(self.transform)
        if not isinstance(self.positions, PositionMethod):
            self.positions = PositionMethod(self.positions)
        if not isinstance(self.p_method, PValueMethod):
            self.p_method = PValueMethod(self.p_method)
        if not all(0.0 < a < 1.0 for a in self.alphas):
            raise DomainError(f"alphas must lie in (0, 1), got {list(self.alphas)}")
        if self.reps < self.min_reps:
            raise DomainError(f"reps must be at least {self.min_reps}, got {self.reps}")
        self.alphas = tuple(sorted(float(a) for a in self.alphas))
