"""
Configuration management for qqcheck
"""
import os
from typing import Tuple
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _parse_alphas(raw: str) -> Tuple[float, ...]:
    return tuple(float(a) for a in raw.split(',') if a.strip())


class Config:
    """Configuration class for qqcheck"""

    # Monte Carlo Settings
    DEFAULT_REPS = int(os.getenv('QQCHECK_REPS', '100000'))  # Desk scale
    FULL_REPS = int(os.getenv('QQCHECK_FULL_REPS', '1000000'))  # Scale of the published tables
    MIN_REPS = int(os.getenv('QQCHECK_MIN_REPS', '10000'))
    DEFAULT_SEED = int(os.getenv('QQCHECK_SEED', '20200105'))
    BLOCK_SIZE = int(os.getenv('QQCHECK_BLOCK_SIZE', '4096'))
    WORKERS = int(os.getenv('QQCHECK_WORKERS', '4'))
    CACHE_SIZE = int(os.getenv('QQCHECK_CACHE_SIZE', '64'))

    # Test Settings
    DEFAULT_ALPHAS = _parse_alphas(os.getenv('QQCHECK_ALPHAS', '0.01,0.05,0.10'))
    VAR_ALPHA = float(os.getenv('QQCHECK_VAR_ALPHA', '0.005'))  # Solvency II confidence level

    # Logging Settings
    LOG_LEVEL = os.getenv('QQCHECK_LOG_LEVEL', 'INFO')
    LOG_FILE = os.getenv('QQCHECK_LOG_FILE')
    LOG_FORMAT = "%(asctime)s: %(levelname)s - %(funcName)s: %(message)s"
