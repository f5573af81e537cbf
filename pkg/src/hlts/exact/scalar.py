"""Rational scalars and their text form.

Scalars are plain :class:`fractions.Fraction` values.  The file format writes
integers as JSON integers and everything else as a ``"p/q"`` string with the
sign carried on the numerator.
"""

from __future__ import annotations

import re
from fractions import Fraction

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL = re.compile(r"^\s*([+\-−]?)(\d+)(?:\s*/\s*(\d+))?\s*$")


class RationalParseError(ValueError):
    """Raised for text that is not a rational literal."""


def parse_scalar(value) -> Fraction:
    """Parse ``value`` (int, Fraction or ``"p/q"`` string) into a Fraction."""
    if isinstance(value, bool):
        raise RationalParseError(f"not a rational literal: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str):
        raise RationalParseError(f"not a rational literal: {value!r}")
    m = _RATIONAL.match(value)
    if m is None:
        raise RationalParseError(f"not a rational literal: {value!r}")
    sign, num, den = m.groups()
    n = int(num)
    d = int(den) if den is not None else 1
    if d == 0:
        raise RationalParseError(f"zero denominator in {value!r}")
    if sign in ("-", "−"):
        n = -n
    return Fraction(n, d)


def format_scalar(q: Fraction) -> int | str:
    """Canonical JSON form: an int when integral, else ``"p/q"``."""
    q = Fraction(q)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def scalar_str(q) -> str:
    return str(format_scalar(q)) if isinstance(q, (int, Fraction)) else str(q)
