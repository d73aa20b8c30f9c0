"""
Plot specification for qqcheck reports
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple


@dataclass
class PlotSpec:
    """What a scatter plot with an optional straight line shows"""
    title: str
    x_label: str
    y_label: str
    points: List[Tuple[float, float]]
    line: Optional[Tuple[float, float]] = None  # (intercept, slope)
    annotations: List[str] = field(default_factory=list)

    def __post_init__(self):
        """Validate points"""
        if not self.points:
            raise ValueError("a plot needs at least one point")
        self.points = [(float(x), float(y)) for x, y in self.points]
        self.annotations = [str(a) for a in self.annotations]
