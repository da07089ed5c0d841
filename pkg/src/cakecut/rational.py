"""Exact rational helpers: parsing and formatting of "p/q" strings.

All arithmetic in this package runs on ``fractions.Fraction`` (arbitrary
precision, always stored in lowest terms with a positive denominator).
Floats appear only in display columns, pruning heuristics and figures.
"""

from __future__ import annotations

from fractions import Fraction


class RationalFormatError(ValueError):
    """Raised for strings that do not encode a rational number."""


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" (or a bare integer "p") into a Fraction.

    A zero denominator is a format error, not a ZeroDivisionError.
    """
    if not isinstance(text, str):
        raise RationalFormatError(f"expected string rational, got {type(text).__name__}")
    s = text.strip()
    if "/" in s:
        num_s, _, den_s = s.partition("/")
        try:
            num, den = int(num_s), int(den_s)
        except ValueError:
            raise RationalFormatError(f"bad rational literal {text!r}") from None
        if den == 0:
            raise RationalFormatError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    try:
        return Fraction(int(s))
    except ValueError:
        raise RationalFormatError(f"bad rational literal {text!r}") from None


def format_rational(value: Fraction) -> str:
    """Format as lowest-terms "p/q" (denominator kept even when 1)."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def approx(value: Fraction, digits: int = 6) -> str:
    """Display-only decimal approximation, 6 significant digits by default."""
    return f"{float(value):.{digits}g}"
