"""Exact-rational helpers shared across the package.

Every quantity with rational inputs is kept as a :class:`fractions.Fraction`
so that threshold comparisons (strict vs non-strict) are decided exactly,
never by floating tolerance.  Floats are admitted as inputs -- a binary
float is itself a rational number and converts exactly.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Union

Rational = Union[int, Fraction]
Number = Union[int, float, Fraction]


def as_fraction(value: Number | str) -> Fraction:
    """Convert exactly to Fraction.

    Accepts ints, Fractions, floats (exact binary expansion) and strings in
    either "p/q" or decimal form ("1/625", "0.2", "3").
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fraction_str(value: Number) -> str:
    """Canonical exact string: "p/q" for non-integers, "p" otherwise."""
    f = as_fraction(value)
    return str(f)


def common_scale(values: list[Fraction]) -> int:
    """Least common multiple of all denominators (1 for an empty list)."""
    result = 1
    for v in values:
        result = lcm(result, v.denominator)
    return result


def is_float_data(values) -> bool:
    """True when a sequence is float-typed (float fast paths apply)."""
    return len(values) > 0 and isinstance(values[0], float)
