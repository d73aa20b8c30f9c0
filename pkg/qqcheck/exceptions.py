"""
Exceptions and warnings raised by qqcheck
"""
from typing import Any, Dict, List, Optional, Tuple


class QQCheckError(Exception):
    """Base class for all qqcheck errors"""
    pass


class DomainError(QQCheckError, ValueError):
    """An argument lies outside the domain of an operation"""
    pass


class RangeError(DomainError):
    """A sample size lies outside the range a source of null parameters covers"""
    pass


class NumericError(QQCheckError, ArithmeticError):
    """A numerical procedure failed; diagnostics describe the failure"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class DegenerateSampleError(QQCheckError):
    """The sample has zero spread, so the statistic is undefined"""
    pass


class DegenerateFitError(DegenerateSampleError):
    """A quantity was requested from a degenerate Q-Q fit"""
    pass


class DataError(QQCheckError):
    """Input data could not be used; carries (line, message) diagnostics"""

    def __init__(self, message: str, diagnostics: Optional[List[Tuple[Optional[int], str]]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []

    def __str__(self) -> str:
        text = super().__str__()
        if not self.diagnostics:
            return text
        lines = [f"  line {line}: {msg}" if line else f"  {msg}" for line, msg in self.diagnostics]
        return text + "\n" + "\n".join(lines)


class RangeWarning(UserWarning):
    """A fitted formula was evaluated outside the range it was fitted on"""
    pass
