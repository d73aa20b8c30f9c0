"""
Models package for qqcheck
"""

from .sample import Sample, Transform
from .positions import PlottingPositions, PositionMethod
from .fit import QQFit, VaREstimate, LognormalSummary
from .results import (
    TestKind,
    PValueMethod,
    NullSource,
    GofResult,
    NullParams,
    Histogram,
    CalibrationTable,
    PowerRow,
    DatasetResults,
)
from .plot import PlotSpec
from .run_config import RunConfig

__all__ = [
    'Sample',
    'Transform',
    'PlottingPositions',
    'PositionMethod',
    'QQFit',
    'VaREstimate',
    'LognormalSummary',
    'TestKind',
    'PValueMethod',
    'NullSource',
    'GofResult',
    'NullParams',
    'Histogram',
    'CalibrationTable',
    'PowerRow',
    'DatasetResults',
    'PlotSpec',
    'RunConfig',
]
