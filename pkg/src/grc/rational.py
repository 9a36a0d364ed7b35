"""Text encoding of exact probabilities as ``"a/b"`` (or ``"a"`` for integers)."""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError

Rational = Fraction


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Parse ``"a/b"``, ``"a"`` or an int. Floats are rejected: they are not exact."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"rationals must be written as \"a/b\" strings, got {value!r}")
    try:
        num, _, den = value.strip().partition("/")
        if "." in num or "." in den or "e" in num.lower():
            raise ValueError
        return Fraction(int(num), int(den)) if den else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational: {value!r}") from None


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
