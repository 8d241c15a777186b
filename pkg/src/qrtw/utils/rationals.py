"""Rational number helpers shared by the CLI, reports and orbit files."""

from fractions import Fraction
from typing import Union

Number = Union[int, Fraction]


def format_rational(value: Number) -> str:
    """'p/q' for proper fractions, 'n' for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or an integer literal. Floating literals are rejected."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"expected p/q or an integer, got {text!r}")
    return Fraction(text)


def bit_length(value: Fraction) -> int:
    """Larger of the numerator and denominator bit lengths."""
    return max(abs(value.numerator).bit_length(), value.denominator.bit_length())
