"""Exact rational values: parsing from decimal strings and canonical printing.

All function values in this package are `fractions.Fraction`. Floats are
rejected at every entry point because a single rounding error would corrupt
exact diagram equality and matching types downstream.
"""

from __future__ import annotations

import re
from fractions import Fraction

_DECIMAL_RE = re.compile(r"^[+-]?(\d+)(\.(\d+))?$")
_RATIO_RE = re.compile(r"^[+-]?\d+/\d+$")

ValueLike = Fraction | int | str


def to_fraction(value: ValueLike) -> Fraction:
    """Coerce an exact value (Fraction, int, or decimal/ratio string)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("boolean is not a graph value")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(
            "float values are not accepted; pass a decimal string or Fraction"
        )
    if isinstance(value, str):
        return parse_value(value)
    raise TypeError(f"cannot interpret {value!r} as an exact value")


def parse_value(text: str) -> Fraction:
    """Parse a decimal string like '1.25' or a ratio like '5/11'."""
    text = text.strip()
    if _DECIMAL_RE.match(text):
        return Fraction(text)
    if _RATIO_RE.match(text):
        return Fraction(text)
    raise ValueError(f"not a decimal or ratio value: {text!r}")


def format_value(value: Fraction) -> str:
    """Canonical text form: shortest decimal when exact, else 'p/q'.

    Values whose denominator has only factors 2 and 5 print as the minimal
    decimal string (no trailing zeros, integers without a point), so that
    parse(format(x)) == x and format(parse(s)) == s on canonical strings.
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = max(twos, fives)
    scaled = value.numerator * 10**digits // value.denominator
    sign = "-" if scaled < 0 else ""
    body = str(abs(scaled)).rjust(digits + 1, "0")
    whole, frac = body[:-digits], body[-digits:]
    frac = frac.rstrip("0")
    if not frac:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac}"
