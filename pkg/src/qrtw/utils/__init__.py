"""
Utilities

Error hierarchy, error handling and rational formatting helpers.
"""

from .error_handler import (
    QrtwError, DenominatorVanishes, SingularSystem, IdenticallySingular,
    NotBiquadratic, DegenerateSwitch, BitCapExceeded, UnknownExample,
    ExpressionSyntaxError, ErrorRecord, ErrorHandler,
    EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_SINGULAR
)
from .rationals import format_rational, parse_rational, bit_length

__all__ = [
    'QrtwError', 'DenominatorVanishes', 'SingularSystem', 'IdenticallySingular',
    'NotBiquadratic', 'DegenerateSwitch', 'BitCapExceeded', 'UnknownExample',
    'ExpressionSyntaxError', 'ErrorRecord', 'ErrorHandler',
    'EXIT_OK', 'EXIT_CHECK_FAILED', 'EXIT_USAGE', 'EXIT_SINGULAR',
    'format_rational', 'parse_rational', 'bit_length'
]
