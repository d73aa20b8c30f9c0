"""
Services package for qqcheck
"""

from . import gof_tests, mc_calibration, order_stats, qq_regression, report

__all__ = [
    'gof_tests',
    'mc_calibration',
    'order_stats',
    'qq_regression',
    'report',
]
