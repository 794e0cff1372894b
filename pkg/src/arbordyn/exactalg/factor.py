"""Rational roots and factorization over Q.

Both work on the primitive integer model and a single large prime P:
factor mod P, lift residues symmetrically, and keep only what divides
exactly over Q. P is chosen above the relevant coefficient bounds, so
the lift is exact whenever a genuine factor exists.
"""

import math
from fractions import Fraction
from itertools import combinations

from arbordyn.errors import DegreeCapExceeded
from arbordyn.exactalg import polyfp as fp
from arbordyn.exactalg.integers import next_prime
from arbordyn.exactalg.polyq import PolyQ, squarefree_decomposition

Q_FACTOR_MAX_DEGREE = 32


def _symmetric(x, p):
    x %= p
    return x - p if x > p // 2 else x


def _good_prime(ints, start):
    """First prime >= start keeping the degree and squarefreeness of ints."""
    p = next_prime(start - 1)
    while True:
        if ints[-1] % p:
            arr = fp.as_array(ints, p)
            if fp.is_squarefree(arr, p):
                return p, arr
        p = next_prime(p)


def _strip_x(f):
    k = 0
    while f.coeff(k) == 0:
        k += 1
    return k, PolyQ(f.coeffs[k:])


def rational_roots(f):
    """All rational roots of a nonzero f with multiplicities, ascending."""
    if f.is_zero():
        raise ValueError("the zero polynomial has every rational as a root")
    k, f = _strip_x(f)
    found = [(Fraction(0), k)] if k else []
    if f.degree >= 1:
        for r in _roots_squarefree(f):
            m = 0
            lin = PolyQ((-r, 1))
            while True:
                q, rem = divmod(f, lin)
                if not rem.is_zero():
                    break
                f, m = q, m + 1
            found.append((r, m))
    return sorted(found)


def _roots_squarefree(f):
    parts = squarefree_decomposition(f)
    s = PolyQ.const(1)
    for g, _ in parts:
        s = s * g
    _, ints = s.primitive()
    lc, c0 = ints[-1], ints[0]
    p, arr = _good_prime(ints, max(2 * abs(lc * c0) + 1, 1009))
    out = []
    for r in fp.roots(arr, p):
        x = Fraction(_symmetric(lc * r, p), lc)
        if s(x) == 0:
            out.append(x)
    return out


def _mignotte(ints):
    """Bound on the coefficients of any integer factor of ints."""
    norm = math.isqrt(sum(c * c for c in ints)) + 1
    return (1 << (len(ints) - 1)) * norm


def _factor_primitive_squarefree(ints):
    """Irreducible integer factors of a primitive squarefree integer polynomial."""
    n = len(ints) - 1
    if n <= 1:
        return [ints]
    lc = abs(ints[-1])
    p, arr = _good_prime(ints, 2 * lc * _mignotte(ints) + 1)
    local = [list(map(int, u)) for u in fp.factor_squarefree(arr, p)]
    if len(local) == 1:
        return [ints]
    target = PolyQ(ints)
    result = []
    s = 1
    while 2 * s <= len(local):
        hit = None
        for combo in combinations(range(len(local)), s):
            lc_t = int(target.lc)
            prod = fp.as_array([lc_t], p)
            for i in combo:
                prod = fp.mul(prod, fp.as_array(local[i], p), p)
            cand = PolyQ([_symmetric(int(c), p) for c in prod]).primitive_part()
            q, r = divmod(target, cand)
            if r.is_zero():
                hit = combo, cand, q
                break
        if hit is None:
            s += 1
            continue
        combo, cand, q = hit
        result.append(cand.primitive()[1])
        target = q.primitive_part()
        local = [u for i, u in enumerate(local) if i not in combo]
    result.append(target.primitive()[1])
    return result


def q_factor(f):
    """Factor f over Q as (leading coefficient, [(monic irreducible, multiplicity)])."""
    if f.degree < 1:
        raise ValueError("q_factor needs deg f >= 1")
    if f.degree > Q_FACTOR_MAX_DEGREE:
        raise DegreeCapExceeded(f"q_factor limited to degree {Q_FACTOR_MAX_DEGREE}")
    out = []
    for part, m in squarefree_decomposition(f):
        for ints in _factor_primitive_squarefree(part.primitive()[1]):
            out.append((PolyQ(ints).monic(), m))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs, t[1]))
    return f.lc, out
