"""
qqcheck - Q-Q regression, plotting positions and tests of (log)normality
"""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("qqcheck")
except PackageNotFoundError:  # source checkout without installation
    __version__ = "0.0.0"

from .config import Config
from .distributions import Family
from .exceptions import (
    DataError,
    DegenerateFitError,
    DegenerateSampleError,
    DomainError,
    NumericError,
    QQCheckError,
    RangeError,
    RangeWarning,
)
from .models import (
    PlottingPositions,
    PositionMethod,
    PValueMethod,
    QQFit,
    Sample,
    TestKind,
    Transform,
)
from .services.order_stats import plotting_positions
from .services.qq_regression import fit, var_estimate
from .services.gof_tests import NormalityTester
from .services.mc_calibration import MonteCarloEngine

__all__ = [
    'Config',
    'Family',
    'DataError',
    'DegenerateFitError',
    'DegenerateSampleError',
    'DomainError',
    'NumericError',
    'QQCheckError',
    'RangeError',
    'RangeWarning',
    'PlottingPositions',
    'PositionMethod',
    'PValueMethod',
    'QQFit',
    'Sample',
    'TestKind',
    'Transform',
    'plotting_positions',
    'fit',
    'var_estimate',
    'NormalityTester',
    'MonteCarloEngine',
]
