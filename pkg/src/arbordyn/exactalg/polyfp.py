"""Polynomials over a prime field F_p.

Internally polynomials are 1-D numpy arrays of residues, lowest degree
first. Arrays use int64 whenever a dot product of residues of the working
length cannot overflow, and Python-int object arrays otherwise, so large
primes stay exact.
"""

import random
from collections import Counter
from dataclasses import dataclass

import numpy as np

from arbordyn.errors import UndefinedReduction
from arbordyn.exactalg.integers import prime_factors

_LIMIT = 1 << 63


def dtype_for(p, n):
    """int64 if sums of n products of residues mod p fit, else object."""
    return np.int64 if (n + 2) * (p - 1) ** 2 < _LIMIT else object


def as_array(coeffs, p, dtype=None):
    coeffs = [int(c) % p for c in coeffs]
    if dtype is None:
        dtype = dtype_for(p, max(len(coeffs), 1))
    return trim(np.array(coeffs, dtype=dtype))


def trim(a):
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def deg(a):
    return len(a) - 1


def mul(a, b, p):
    if not len(a) or not len(b):
        return a[:0]
    return np.convolve(a, b) % p


def divmod_(a, b, p):
    """Quotient and remainder of a by nonzero b."""
    db = len(b) - 1
    r = a.copy()
    if len(r) - 1 < db:
        return a[:0], trim(r)
    inv = pow(int(b[-1]), -1, p)
    q = np.zeros(len(r) - db, dtype=a.dtype)
    for k in range(len(r) - 1 - db, -1, -1):
        c = int(r[k + db]) * inv % p
        if c:
            q[k] = c
            r[k:k + db + 1] = (r[k:k + db + 1] - c * b) % p
    return trim(q), trim(r[:db])


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def monic(a, p):
    if not len(a):
        return a
    inv = pow(int(a[-1]), -1, p)
    return a * inv % p


def gcd(a, b, p):
    """Monic gcd."""
    a, b = trim(a), trim(b)
    while len(b):
        a, b = b, rem(a, b, p)
    return monic(a, p)


def derivative(a, p):
    if len(a) <= 1:
        return a[:0]
    return trim(a[1:] * np.arange(1, len(a), dtype=a.dtype) % p)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=a.dtype if len(a) else b.dtype)
    out[: len(a)] += a
    out[: len(b)] -= b
    return trim(out % p)


def compose(f, g, p):
    """f(g(X)) by Horner's rule."""
    acc = f[:0]
    for c in f[::-1]:
        acc = mul(acc, g, p)
        if len(acc):
            acc[0] = (acc[0] + c) % p
        elif c:
            acc = np.array([c], dtype=f.dtype)
        acc = trim(acc)
    return acc


class ModRing:
    """Arithmetic in F_p[X]/(g) for monic g of degree n >= 1.

    Elements are dense length-n arrays. Reduction of a product uses the
    precomputed rows X^(n+j) mod g.
    """

    def __init__(self, g, p):
        self.p = p
        self.g = monic(trim(g), p)
        self.n = n = len(self.g) - 1
        if n < 1:
            raise ValueError("modulus must have degree >= 1")
        self.dtype = self.g.dtype
        red = np.zeros((max(n - 1, 1), n), dtype=self.dtype)
        red[0] = (-self.g[:n]) % p
        for j in range(1, n - 1):
            prev = red[j - 1]
            row = np.zeros(n, dtype=self.dtype)
            row[1:] = prev[:-1]
            red[j] = (row + prev[-1] * red[0]) % p
        self.red = red

    def element(self, a):
        a = trim(np.asarray(a, dtype=self.dtype))
        if len(a) > self.n:
            a = rem(a, self.g, self.p)
        out = np.zeros(self.n, dtype=self.dtype)
        out[: len(a)] = a
        return out

    def one(self):
        return self.element([1])

    def x(self):
        return self.element([0, 1])

    def reduce(self, c):
        n, p = self.n, self.p
        if len(c) <= n:
            out = np.zeros(n, dtype=self.dtype)
            out[: len(c)] = c
            return out
        if len(c) > 2 * n - 1:
            return self.element(c)
        high = c[n:]
        return (c[:n] + high @ self.red[: len(high)]) % p

    def mul(self, a, b):
        return self.reduce(np.convolve(a, b) % self.p)

    def mulx(self, a):
        out = np.zeros(self.n, dtype=self.dtype)
        out[1:] = a[:-1]
        return (out + a[-1] * self.red[0]) % self.p

    def pow_x(self, e):
        """X^e mod g."""
        out = self.one()
        for bit in bin(e)[2:]:
            out = self.mul(out, out)
            if bit == "1":
                out = self.mulx(out)
        return out

    def pow(self, a, e):
        out = self.one()
        for bit in bin(e)[2:]:
            out = self.mul(out, out)
            if bit == "1":
                out = self.mul(out, a)
        return out

    def frobenius_matrix(self):
        """Matrix Q with column i equal to X^(i p) mod g, so a^p = Q a."""
        n = self.n
        xp = self.pow_x(self.p)
        q = np.zeros((n, n), dtype=self.dtype)
        col = self.one()
        for i in range(n):
            q[:, i] = col
            if i + 1 < n:
                col = self.mul(col, xp)
        return q


def is_squarefree(a, p):
    da = derivative(a, p)
    if not len(da):
        return len(a) <= 1
    return len(gcd(a, da, p)) == 1


def irreducible(a, p):
    """Rabin-style irreducibility test of a (nonconstant) polynomial over F_p."""
    a = trim(a)
    n = deg(a)
    if n < 1:
        raise ValueError("irreducibility test needs degree >= 1")
    if n == 1:
        return True
    a = monic(a, p)
    if not is_squarefree(a, p):
        return False
    ring = ModRing(a, p)
    q = ring.frobenius_matrix()
    targets = {n // r for r in prime_factors(n)}
    x = ring.x()
    y = x
    saved = {}
    for k in range(1, n + 1):
        y = q @ y % p
        if k in targets:
            saved[k] = y
    if not np.array_equal(y, x):
        return False
    for y in saved.values():
        if len(gcd(a, sub(trim(y), trim(x), p), p)) > 1:
            return False
    return True


def _pth_root(a, p):
    return trim(a[::p].copy())


def squarefree_factorization(a, p):
    """[(g, m)] with a = lc * prod g^m, g monic squarefree (char-p aware)."""
    a = monic(trim(a), p)
    out = []
    if deg(a) < 1:
        return out
    da = derivative(a, p)
    c = gcd(a, da, p) if len(da) else a
    w = divmod_(a, c, p)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(w, c, p)
        fac = divmod_(w, y, p)[0]
        if deg(fac) > 0:
            out.append((monic(fac, p), i))
        w = y
        c = divmod_(c, y, p)[0]
        i += 1
    if deg(c) > 0:
        for g, m in squarefree_factorization(_pth_root(c, p), p):
            out.append((g, m * p))
    return out


def distinct_degree(a, p):
    """[(h_d, d)] where h_d is the product of the degree-d factors of squarefree monic a."""
    a = monic(trim(a), p)
    out = []
    if deg(a) < 1:
        return out
    if deg(a) == 1:
        return [(a, 1)]
    ring = ModRing(a, p)
    q = ring.frobenius_matrix()
    x = ring.x()
    y = x
    rest = a
    d = 0
    while deg(rest) >= 2 * (d + 1):
        d += 1
        y = q @ y % p
        h = gcd(rest, sub(trim(y), trim(x), p), p)
        if deg(h) > 0:
            out.append((h, d))
            rest = divmod_(rest, h, p)[0]
    if deg(rest) > 0:
        out.append((monic(rest, p), deg(rest)))
    return out


def equal_degree(h, d, p, rng=None):
    """Split a monic squarefree product of degree-d irreducibles (odd p)."""
    if p == 2:
        raise ValueError("equal-degree splitting implemented for odd p only")
    rng = rng or random.Random(0)
    h = monic(trim(h), p)
    if deg(h) == d:
        return [h]
    ring = ModRing(h, p)
    q = ring.frobenius_matrix()
    n = ring.n
    while True:
        a = ring.element([rng.randrange(p) for _ in range(n)])
        if not np.any(a[1:]):
            continue
        # a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        t, cur = a, a
        for _ in range(d - 1):
            cur = q @ cur % p
            t = ring.mul(t, cur)
        b = ring.pow(t, (p - 1) // 2)
        b[0] = (b[0] - 1) % p
        g = gcd(h, trim(b), p)
        if 0 < deg(g) < deg(h):
            return equal_degree(g, d, p, rng) + equal_degree(divmod_(h, g, p)[0], d, p, rng)


def factor_squarefree(a, p, rng=None):
    """Monic irreducible factors of a squarefree polynomial (odd p)."""
    out = []
    for h, d in distinct_degree(a, p):
        out += equal_degree(h, d, p, rng)
    return out


def roots(a, p, rng=None):
    """Distinct roots in F_p of a nonzero polynomial (odd p)."""
    a = monic(trim(a), p)
    if deg(a) < 1:
        return []
    out = []
    if a[0] == 0:
        out.append(0)
        while len(a) and a[0] == 0:
            a = a[1:]
    if deg(a) < 1:
        return out
    ring = ModRing(a, p)
    xp = ring.pow_x(p)
    lin = gcd(a, sub(trim(xp), np.array([0, 1], dtype=a.dtype), p), p)
    if deg(lin) > 0:
        for fac in equal_degree(lin, 1, p, rng):
            out.append(int(-fac[0] % p))
    return sorted(out)


# public wrappers


@dataclass(frozen=True)
class PolyFp:
    """Polynomial over F_p with residues in [0, p), lowest degree first."""

    p: int
    coeffs: tuple = ()

    def __post_init__(self):
        c = [int(x) % self.p for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def array(self, n=None):
        return as_array(self.coeffs, self.p, dtype_for(self.p, n or max(len(self.coeffs), 1)))

    @classmethod
    def from_array(cls, p, a):
        return cls(p, tuple(int(x) for x in a))

    def __str__(self):
        from arbordyn.exactalg.polyq import PolyQ, format_poly

        return f"{format_poly(PolyQ(self.coeffs))} over F_{self.p}"


@dataclass(frozen=True)
class FactorShape:
    """Multiset of (degree, multiplicity) pairs of irreducible factors."""

    pairs: tuple

    @classmethod
    def of(cls, pairs):
        return cls(tuple(sorted(pairs, reverse=True)))

    @property
    def degree(self):
        return sum(d * m for d, m in self.pairs)

    def counter(self):
        return Counter(self.pairs)

    def cycle_type(self):
        """Frobenius cycle type (descending), ignoring multiplicities."""
        return tuple(sorted((d for d, _ in self.pairs), reverse=True))

    def __str__(self):
        return "{" + ", ".join(f"({d},{m})" for d, m in self.pairs) + "}"


def reduce_mod_p(f, p):
    """Coefficientwise reduction of a PolyQ; UndefinedReduction on p-denominators."""
    out = []
    for c in f.coeffs:
        if c.denominator % p == 0:
            raise UndefinedReduction(f"coefficient {c} has denominator divisible by {p}")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return PolyFp(p, tuple(out))


def fp_irreducible(g):
    if g.degree < 1:
        raise ValueError("fp_irreducible needs degree >= 1")
    return irreducible(g.array(), g.p)


def fp_factor_shape(g):
    """Degrees and multiplicities of the irreducible factors of g."""
    if g.degree < 1:
        raise ValueError("fp_factor_shape needs degree >= 1")
    p = g.p
    pairs = []
    for part, m in squarefree_factorization(g.array(), p):
        for h, d in distinct_degree(part, p):
            pairs += [(d, m)] * (deg(h) // d)
    return FactorShape.of(pairs)


def fp_roots(g):
    return roots(g.array(), g.p)
