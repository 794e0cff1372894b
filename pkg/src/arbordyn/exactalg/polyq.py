"""Dense univariate polynomials over the rationals."""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from arbordyn.errors import DegreeCapExceeded
from arbordyn.exactalg.rational import as_rational, format_rational

DEFAULT_DEGREE_CAP = 10**5


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class PolyQ:
    """Polynomial with Fraction coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(as_rational(c) for c in self.coeffs))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def from_roots(cls, roots, lc=1):
        out = cls.const(lc)
        for r in roots:
            out = out * cls((-as_rational(r), 1))
        return out

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    # arithmetic

    @staticmethod
    def _lift(other):
        if isinstance(other, PolyQ):
            return other
        return PolyQ.const(other)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return PolyQ(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, PolyQ):
            c = as_rational(other)
            return PolyQ(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result, base = PolyQ.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return PolyQ(), self
        quo = [Fraction(0)] * (len(rem) - db)
        inv = 1 / other.lc
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return PolyQ(quo), PolyQ(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        """Division by a scalar, or exact division by a polynomial."""
        if not isinstance(other, PolyQ):
            return self * (1 / as_rational(other))
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("polynomial division is not exact")
        return q

    def __call__(self, x):
        if isinstance(x, PolyQ):
            return self.compose(x)
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, g):
        acc = PolyQ()
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def derivative(self):
        return PolyQ(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def taylor_shift(self, a):
        """f(X + a)."""
        return self.compose(PolyQ((a, 1)))

    def common_denominator(self):
        return reduce(lcm, (c.denominator for c in self.coeffs), 1)

    def primitive(self):
        """Return (content, integer coefficient list) with positive leading coefficient.

        ``self == content * sum(ints[i] X^i)`` and gcd(ints) == 1.
        """
        if self.is_zero():
            return Fraction(0), []
        den = self.common_denominator()
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [c // g for c in ints]

    def primitive_part(self):
        return PolyQ(self.primitive()[1])

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"PolyQ({format_poly(self)!r})"

    def to_json(self):
        return [int(c) if c.denominator == 1 else format_rational(c) for c in self.coeffs]


def format_poly(f, var="x"):
    if f.is_zero():
        return "0"
    terms = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = format_rational(mag)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            body = mon if mag == 1 else f"{format_rational(mag)}*{mon}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_compose(f, g):
    """f(g(X))."""
    return f.compose(g)


def poly_iterate(f, n, degree_cap=DEFAULT_DEGREE_CAP):
    """n-th iterate of f; the 0-th iterate is X."""
    if f.degree < 1:
        raise ValueError("iteration needs deg f >= 1")
    if n < 0:
        raise ValueError("negative iterate")
    if f.degree**n > degree_cap:
        raise DegreeCapExceeded(f"deg f^{n} = {f.degree}^{n} exceeds cap {degree_cap}")
    out = PolyQ.x()
    for _ in range(n):
        out = f.compose(out)
    return out


def poly_gcd(a, b):
    """Monic gcd over Q (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(f):
    """Yun's algorithm: f = lc(f) * prod g_i^i, each g_i monic squarefree.

    Returns [(g_i, i)] for the nonconstant g_i, ordered by multiplicity.
    """
    if f.degree < 1:
        raise ValueError("squarefree decomposition needs deg f >= 1")
    out = []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f / a
    c = df / a
    d = c - b.derivative()
    i = 1
    while not b.is_constant():
        a = poly_gcd(b, d)
        if not a.is_constant():
            out.append((a, i))
        b = b / a
        c = d / a
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(f):
    """Product of the distinct monic irreducible factors of f."""
    out = PolyQ.const(1)
    for g, _ in squarefree_decomposition(f):
        out = out * g
    return out


def resultant(a, b):
    """Res(a, b) over Q via the Euclidean remainder sequence."""
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    sign = 1
    scale = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return sign * scale * b.lc**da
        r = a % b
        if r.is_zero():
            return Fraction(0)
        if (da * db) % 2:
            sign = -sign
        scale *= b.lc ** (da - r.degree)
        a, b = b, r


def discriminant(f):
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)."""
    d = f.degree
    if d < 1:
        raise ValueError("discriminant needs deg f >= 1")
    if d == 1:
        return Fraction(1)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


def interpolate(points):
    """Lagrange interpolation through [(x, y)] with distinct rational x."""
    out = PolyQ()
    for i, (xi, yi) in enumerate(points):
        term = PolyQ.const(yi)
        for j, (xj, _) in enumerate(points):
            if j != i:
                term = term * PolyQ((-xj, 1)) * (1 / (as_rational(xi) - xj))
        out = out + term
    return out


def discriminant_in_t(f):
    """Delta(t) = disc_X(f(X) - t) as a polynomial in t.

    Delta has degree exactly deg f - 1 in t, so it is recovered by exact
    interpolation from deg f specializations t = 0, 1, ..., deg f - 1.
    """
    d = f.degree
    if d < 2:
        raise ValueError("discriminant_in_t needs deg f >= 2")
    pts = [(Fraction(k), discriminant(f - k)) for k in range(d)]
    return interpolate(pts)
