"""Exact rational parsing and formatting.

Every quantity in this package is a :class:`fractions.Fraction`; floats never
enter a computation.  These helpers pin down the one wire format ("p/q") and
the decimal rendering used in human-readable tables.
"""

from __future__ import annotations

from fractions import Fraction


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, exact decimal strings (``"0.5"`` -> 1/2) or integers."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {value!r}") from exc


def format_rational(value) -> str:
    """Render as ``p/q``; the denominator is kept even when it is 1."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def rational_to_json(value):
    """Integers become JSON integers, everything else a ``p/q`` string."""
    f = Fraction(value)
    return f.numerator if f.denominator == 1 else format_rational(f)


def format_decimal(value, places: int = 6) -> str:
    """Decimal rendering for tables: exact when terminating, rounded otherwise."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    den = f.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den == 1:
        exp = max(twos, fives)
        scaled = abs(f.numerator) * 10**exp // f.denominator
        digits = str(scaled).rjust(exp + 1, "0")
        sign = "-" if f < 0 else ""
        return f"{sign}{digits[:-exp]}.{digits[-exp:]}"
    return f"{float(f):.{places}g}"
