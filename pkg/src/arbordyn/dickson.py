"""Normalized Dickson cubics and the values a of maximal stable-prime density."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from arbordyn.errors import NotRepresentable
from arbordyn.exactalg.factor import rational_roots
from arbordyn.exactalg.polyq import PolyQ
from arbordyn.exactalg.rational import as_rational


@dataclass(frozen=True)
class DicksonParams:
    c: int
    sign: int = 1
    representation: Optional[tuple] = None

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("c must be a positive integer")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.representation is not None:
            al, be = self.representation
            if al * al + 3 * be * be != self.c:
                raise ValueError(f"{self.representation} does not represent {self.c}")


def represent_c(c):
    """Some (alpha, beta) with c = alpha^2 + 3 beta^2, smallest beta >= 0 first."""
    if c < 1 or c > 10**12:
        raise ValueError("represent_c needs 1 <= c <= 10^12")
    for beta in range(math.isqrt(c // 3) + 1):
        rest = c - 3 * beta * beta
        alpha = math.isqrt(rest)
        if alpha * alpha == rest:
            return alpha, beta
    return None


def dickson_poly(params):
    """sign * (X^3 - 3 c X)."""
    return PolyQ((0, -3 * params.c, 0, 1)) * params.sign


def g_value(c, alpha, beta, x):
    """2c (alpha x^2 + 6 beta x - 3 alpha) / (x^2 + 3)."""
    if alpha * alpha + 3 * beta * beta != c:
        raise ValueError("need c = alpha^2 + 3 beta^2")
    x = as_rational(x)
    return 2 * c * (alpha * x * x + 6 * beta * x - 3 * alpha) / (x * x + 3)


def in_image(f, a):
    """True iff f(X) - a has a rational root."""
    g = f - as_rational(a)
    if g.is_zero():
        return True
    if g.degree < 1:
        return False
    return bool(rational_roots(g))


def rationals_by_height():
    """0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 3/2, ... in ascending naive height."""
    yield Fraction(0)
    h = 1
    while True:
        for den in range(1, h + 1):
            nums = [h] if den < h or den == 1 else list(range(1, h))
            for num in nums:
                if math.gcd(num, den) == 1:
                    yield Fraction(num, den)
                    yield Fraction(-num, den)
        h += 1


def maximal_density_candidates(c, count, sign=1):
    """First `count` distinct values a = g(x) over x by height, with eligibility
    meaning a is not in f(Q) for f = sign * (X^3 - 3cX)."""
    rep = represent_c(c)
    if rep is None:
        raise NotRepresentable(f"{c} is not of the form alpha^2 + 3 beta^2")
    alpha, beta = rep
    f = dickson_poly(DicksonParams(c, sign, rep))
    out = []
    seen = set()
    for x in rationals_by_height():
        if len(out) >= count:
            break
        a = g_value(c, alpha, beta, x)
        if a in seen:
            continue
        seen.add(a)
        out.append((a, not in_image(f, a)))
    return out
