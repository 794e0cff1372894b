"""Rational numbers (``fractions.Fraction``) and p-adic valuations."""

import math
from fractions import Fraction

from arbordyn.errors import PolyParseError


def as_rational(x):
    """Coerce int, Fraction or a literal like ``"-1/7"`` to a Fraction.

    Floats are rejected: every quantity in this package is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip().replace(" ", "")
        try:
            if "/" in s:
                num, den = s.split("/")
                return Fraction(int(num), int(den))
            return Fraction(int(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise PolyParseError(f"not a rational literal: {x!r}") from exc
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact rational")


def _int_valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(x, p):
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    x = as_rational(x)
    if x == 0:
        return math.inf
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def naive_height(x):
    """Multiplicative naive height max(|numerator|, denominator)."""
    x = as_rational(x)
    return max(abs(x.numerator), x.denominator)


def log_height(x):
    return math.log(naive_height(x))


def is_p_integral(x, p):
    return as_rational(x).denominator % p != 0


def mod_p(x, p):
    """Reduce a p-integral rational to a residue in [0, p)."""
    x = as_rational(x)
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


def format_rational(x):
    x = as_rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
