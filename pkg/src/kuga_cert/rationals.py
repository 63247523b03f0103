"""Parsing and printing of exact rationals ("p/q" strings, ints, Fractions)."""

from fractions import Fraction
from numbers import Rational

from .errors import InvalidInputError


def as_fraction(value) -> Fraction:
    """Coerce ``value`` to a Fraction without ever going through float.

    Accepts ints, Fractions, other exact rationals and strings such as
    ``"3"``, ``"-2/7"``.  Floats are rejected.
    """
    if isinstance(value, bool):
        raise InvalidInputError(f"booleans are not rationals: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise InvalidInputError(f"decimal notation not allowed, use p/q: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"not a rational: {value!r}") from exc
    raise InvalidInputError(f"not a rational: {value!r} ({type(value).__name__})")


def fraction_str(value: Fraction) -> str:
    """Canonical serialization: ``"p/q"`` or ``"p"`` when integral."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
