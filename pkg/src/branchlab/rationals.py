"""Exact rational helpers and their JSON string form ("num/den")."""

from fractions import Fraction
from numbers import Rational

__all__ = ["as_fraction", "format_fraction", "parse_fraction", "ceil_log2", "to_jsonable"]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and "a/b" strings to a Fraction.

    Floats are refused: every weight in the library is exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def ceil_log2(n: int) -> int:
    """Smallest L with 2**L >= n, for a positive integer n."""
    if n < 1:
        raise ValueError("ceil_log2 needs a positive integer")
    return (n - 1).bit_length()


def to_jsonable(obj):
    """Recursively convert Fractions to "a/b" strings and big ints to decimal strings.

    Ints that fit in 53 bits stay numbers so small counts remain readable.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, int):
        return obj if abs(obj) < 2**53 else str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    raise TypeError(f"cannot serialise {type(obj).__name__}")
