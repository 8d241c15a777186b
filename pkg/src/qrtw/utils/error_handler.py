"""
Error Handling Utility

Exception hierarchy for the workbench, plus a small handler that records
errors with a severity and maps them to command-line exit codes.
"""

import logging
import time
from typing import Dict, Any, List, Optional
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_SINGULAR = 3


class QrtwError(Exception):
    """Base class for workbench errors."""
    severity = 'medium'
    exit_code = EXIT_CHECK_FAILED


class DenominatorVanishes(QrtwError):
    """A denominator evaluates to zero: the point lies on a singular locus."""
    exit_code = EXIT_SINGULAR

    def __init__(self, locus: str, point: Optional[Dict[str, Any]] = None,
                 component: Optional[str] = None, step: Optional[int] = None):
        self.locus = locus
        self.point = point or {}
        self.component = component
        self.step = step
        where = f" in {component}" if component else ""
        when = f" at step {step}" if step is not None else ""
        super().__init__(f"denominator {locus} vanishes{where}{when}")


class SingularSystem(QrtwError):
    """Every pivot candidate of a linear system vanishes identically."""
    exit_code = EXIT_SINGULAR

    def __init__(self, column: int):
        self.column = column
        super().__init__(f"no nonzero pivot in column {column}")


class IdenticallySingular(QrtwError):
    """A composed denominator is the zero polynomial."""
    exit_code = EXIT_SINGULAR

    def __init__(self, component: str):
        self.component = component
        super().__init__(f"denominator of {component} is identically zero")


class NotBiquadratic(QrtwError):
    exit_code = EXIT_SINGULAR

    def __init__(self, variable: str, degree: int):
        self.variable = variable
        self.degree = degree
        if degree == 0:
            super().__init__(f"invariant does not depend on {variable}")
        else:
            super().__init__(f"invariant has degree {degree} in {variable}, expected at most 2")


class DegenerateSwitch(QrtwError):
    """The switch polynomial has no second root in the variable."""
    exit_code = EXIT_SINGULAR

    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(f"switch in {variable} is degenerate: invariant is linear in {variable}")


class BitCapExceeded(QrtwError):
    severity = 'low'
    exit_code = EXIT_SINGULAR

    def __init__(self, step: int, bits: int, cap: int):
        self.step = step
        self.bits = bits
        self.cap = cap
        super().__init__(f"orbit entry at step {step} needs {bits} bits (cap {cap})")


class UnknownExample(QrtwError):
    severity = 'low'
    exit_code = EXIT_USAGE

    def __init__(self, name: str, known: Optional[List[str]] = None):
        self.name = name
        self.known = known or []
        hint = f"; known: {', '.join(self.known)}" if self.known else ""
        super().__init__(f"unknown example {name!r}{hint}")


class ExpressionSyntaxError(QrtwError):
    """A formula file line does not follow the `name := expression` grammar."""
    severity = 'high'
    exit_code = EXIT_USAGE

    def __init__(self, source: str, line: int, message: str):
        self.source = source
        self.line = line
        super().__init__(f"{source}:{line}: {message}")


@dataclass
class ErrorRecord:
    """Represents an error raised while running a command."""
    error_type: str
    message: str
    timestamp: float
    context: Dict[str, Any] = field(default_factory=dict)
    severity: str = 'medium'  # low, medium, high, critical


class ErrorHandler:
    """Collects error records and translates exceptions into exit codes."""

    SEVERITY_ICONS = {
        'low': 'ℹ️',
        'medium': '⚠️',
        'high': '🚨',
        'critical': '💥'
    }

    def __init__(self):
        self.records: List[ErrorRecord] = []

    def record(self, error: BaseException, **context) -> ErrorRecord:
        """Record an error and log it at a level matching its severity."""
        severity = getattr(error, 'severity', 'high')
        error_record = ErrorRecord(
            error_type=type(error).__name__,
            message=str(error),
            timestamp=time.time(),
            context=context,
            severity=severity
        )
        self.records.append(error_record)

        icon = self.SEVERITY_ICONS.get(severity, '⚠️')
        if severity in ('high', 'critical'):
            logger.error(f"{icon} {error_record.error_type}: {error_record.message}")
        else:
            logger.warning(f"{icon} {error_record.error_type}: {error_record.message}")
        return error_record

    @staticmethod
    def exit_code_for(error: BaseException) -> int:
        if isinstance(error, QrtwError):
            return error.exit_code
        if isinstance(error, (ValueError, FileNotFoundError)):
            return EXIT_USAGE
        return EXIT_CHECK_FAILED

    def get_error_summary(self) -> Dict[str, Any]:
        by_type: Dict[str, int] = {}
        for error_record in self.records:
            by_type[error_record.error_type] = by_type.get(error_record.error_type, 0) + 1
        return {'total_errors': len(self.records), 'by_type': by_type}
