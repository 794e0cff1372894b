"""Mod-p stability engines, good primes, ramification prediction, witness searches."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


from arbordyn.errors import (
    BadPrime,
    DegreeCapExceeded,
    NonIntegral,
    NoWanderingWitness,
    UndefinedReduction,
)
from arbordyn.exactalg import polyfp as fp
from arbordyn.exactalg.factor import q_factor
from arbordyn.exactalg.integers import factor_integer, prime_factors
from arbordyn.exactalg.polyq import (
    PolyQ,
    discriminant,
    discriminant_in_t,
    squarefree_part,
)
from arbordyn.exactalg.rational import as_rational, format_rational, is_p_integral, mod_p, valuation
from arbordyn.dynamics import critical_points, fiber_cycle_type
from arbordyn.wreath.cycletype import CycleType

# Largest iterate degree the depth engine will factor. The irreducibility
# test is cubic in the degree.
DEFAULT_MAX_DEGREE = 1024

REDUCIBLE = "Reducible"
DEGREE_DROP = "DegreeDrop"
UNDEFINED = "Undefined"


@dataclass(frozen=True)
class StabilityVerdict:
    prime: int
    mode: str  # "DepthBounded" or "ExactUnicritical"
    status: str  # "StableUpTo", "StableExact" or "UnstableAt"
    level: Optional[int] = None  # depth reached for StableUpTo, failing level for UnstableAt
    reason: Optional[str] = None
    depth: Optional[int] = None  # requested depth in DepthBounded mode
    orbit_period_mod_p: Optional[int] = None
    truncated: bool = False

    @property
    def stable(self):
        return self.status in ("StableUpTo", "StableExact")

    def outcome(self):
        """Mode-independent summary used for comparisons."""
        if self.stable:
            return ("stable",)
        return ("unstable", self.level, self.reason)

    def to_json(self):
        return {k: v for k, v in self.__dict__.items() if v is not None}

    def __str__(self):
        if self.status == "UnstableAt":
            return f"UnstableAt({self.level}, {self.reason})"
        if self.status == "StableUpTo":
            return f"StableUpTo({self.level})"
        return "StableExact"


def _unstable(p, mode, level, reason, depth=None, period=None):
    return StabilityVerdict(p, mode, "UnstableAt", level, reason, depth, period)


# depth-bounded engine


def depth_stable(f, a, p, n, max_degree=DEFAULT_MAX_DEGREE, on_cap="raise"):
    """Test irreducibility of f^n(X) - a mod p for levels 1..n, all over F_p.

    Levels whose degree exceeds max_degree are not attempted: with
    on_cap="raise" DegreeCapExceeded is raised, with on_cap="truncate" the
    verdict is StableUpTo(k) for the last level k that was tested, marked
    truncated.
    """
    if f.degree < 2 or n < 1:
        raise ValueError("depth_stable needs deg f >= 2 and N >= 1")
    mode = "DepthBounded"
    try:
        fbar = fp.reduce_mod_p(f, p)
        abar = mod_p(a, p) if is_p_integral(a, p) else None
    except UndefinedReduction:
        fbar = abar = None
    if fbar is None or abar is None:
        return _unstable(p, mode, 1, UNDEFINED, n)
    if fbar.degree < f.degree:
        return _unstable(p, mode, 1, DEGREE_DROP, n)
    d = f.degree
    top = min(n, max((k for k in range(1, n + 1) if d**k <= max_degree), default=0))
    if top < n and on_cap == "raise":
        raise DegreeCapExceeded(f"level {top + 1} has degree {d ** (top + 1)} > {max_degree}")
    dtype = fp.dtype_for(p, d**top + 1)
    farr = fp.as_array(fbar.coeffs, p, dtype)
    g = fp.as_array([0, 1], p, dtype)
    for level in range(1, top + 1):
        g = fp.compose(farr, g, p)
        h = g.copy()
        h[0] = (h[0] - abar) % p
        if not fp.irreducible(fp.trim(h), p):
            return _unstable(p, mode, level, REDUCIBLE, n)
    return StabilityVerdict(p, mode, "StableUpTo", top, None, n, None, top < n)


# exact unicritical engine


def unicritical_shape(f):
    """(u, d, v) if f = u X^d + v, else None."""
    d = f.degree
    if d < 2 or any(f.coeff(i) for i in range(1, d)):
        return None
    return f.lc, d, f.coeff(0)


def _is_qth_power(x, q, p):
    """x in F_p a q-th power, for q | p - 1 (0 counts as a q-th power)."""
    return x == 0 or pow(x, (p - 1) // q, p) == 1


def unicritical_exact_stable(u, d, v, a, p):
    """Exact mod-p stability of (uX^d + v, a) by finitely many power-residue tests.

    Level 1 asks that (a - v)/u is not a q-th power for each prime q | d;
    level n + 1 asks the same of (f^n(v) - a)/u. These values only depend on
    the orbit of v mod p, so one pass over that orbit decides all levels.
    """
    mode = "ExactUnicritical"
    u, v, a = as_rational(u), as_rational(v), as_rational(a)
    if d < 2:
        raise ValueError("degree must be >= 2")
    if not all(is_p_integral(x, p) for x in (u, v, a)):
        return _unstable(p, mode, 1, UNDEFINED)
    ub, vb, ab = mod_p(u, p), mod_p(v, p), mod_p(a, p)
    if ub == 0:
        return _unstable(p, mode, 1, DEGREE_DROP)
    qs = prime_factors(d)
    if any((p - 1) % q for q in qs) or (d % 4 == 0 and p % 4 != 1):
        return _unstable(p, mode, 1, REDUCIBLE)
    uinv = pow(ub, -1, p)

    def bad(c):
        return any(_is_qth_power(c, q, p) for q in qs)

    seen = set()
    x = vb
    level = 1
    fail = bad((ab - vb) * uinv % p)
    n = 0
    while not fail:
        n += 1
        x = (ub * pow(x, d, p) + vb) % p
        if x in seen:
            break
        seen.add(x)
        level = n + 1
        fail = bad((x - ab) * uinv % p)
    period = _period(ub, d, vb, p)
    if fail:
        return _unstable(p, mode, level, REDUCIBLE, period=period)
    return StabilityVerdict(p, mode, "StableExact", None, None, None, period)


def _period(ub, d, vb, p):
    first = {}
    x, n = vb, 0
    while x not in first:
        first[x] = n
        x = (ub * pow(x, d, p) + vb) % p
        n += 1
    return n - first[x]


# good primes


class GoodPrimeData:
    """Precomputed data for the good-prime test of F = f(X) - t, normalized monic."""

    def __init__(self, f):
        if f.degree < 2:
            raise ValueError("good_prime needs deg f >= 2")
        self.f = f
        self.degree = f.degree
        dens = [c.denominator for c in f.coeffs]
        monic = f.monic()
        dens += [c.denominator for c in monic.coeffs]
        self.denominators = math.lcm(*dens, f.lc.numerator)
        self.delta = discriminant_in_t(f)
        content, _ = self.delta.primitive()
        self.content_numerator = abs(content.numerator)
        s = squarefree_part(self.delta)
        _, s_int = s.primitive()
        self.s = PolyQ(s_int)
        self.s_lc = abs(s_int[-1])
        self.s_disc = abs(int(discriminant(self.s))) if self.s.degree >= 1 else 1

    def reasons(self, p):
        out = []
        if self.denominators % p == 0:
            out.append("i")
        if self.content_numerator % p == 0:
            out.append("ii")
        if self.s_lc % p == 0 or self.s_disc % p == 0:
            out.append("iii")
        if p <= self.degree:
            out.append("iv")
        return out

    def is_good(self, p):
        return not self.reasons(p)


def good_prime(f, p, data=None):
    """(good, reason tags) for the specialization F = f(X) - t at p."""
    data = data or GoodPrimeData(f)
    reasons = data.reasons(p)
    return not reasons, reasons


# ramification


def intersection_mult(a, t, p):
    """nu_p(a - t) for rational t, nu_p(mu(a)) for a minimal polynomial mu."""
    a = as_rational(a)
    if not is_p_integral(a, p):
        raise NonIntegral(f"{a} is not {p}-integral")
    if isinstance(t, PolyQ):
        if t.lc != 1 or not all(is_p_integral(c, p) for c in t.coeffs):
            raise NonIntegral(f"{t} is not a monic {p}-integral polynomial")
        return valuation(t(a), p)
    t = as_rational(t)
    if not is_p_integral(t, p):
        raise NonIntegral(f"{t} is not {p}-integral")
    return valuation(a - t, p)


@dataclass(frozen=True)
class InertiaData:
    branch_point: object  # Fraction or monic irreducible PolyQ
    inertia_cycle_type: Optional[CycleType]
    inertia_order: Optional[int]

    def to_json(self):
        bp = self.branch_point
        return {
            "branch_point": format_rational(bp) if isinstance(bp, Fraction) else str(bp),
            "inertia_cycle_type": None if self.inertia_cycle_type is None else list(self.inertia_cycle_type.parts),
            "inertia_order": self.inertia_order,
        }


def _inertia_over(f, mu, deriv_factors):
    """Cycle type of inertia over the roots of the irreducible factor mu of Delta."""
    if mu.degree == 1:
        t = -mu.coeff(0)
        ct = fiber_cycle_type(f, t)
        return InertiaData(t, ct, ct.order)
    if deriv_factors is None:
        return InertiaData(mu, None, None)
    e = mu.degree
    muf = mu.compose(f)
    parts = []
    for g, m in deriv_factors:
        if (muf % g).is_zero():
            parts += [m + 1] * (g.degree // e)
    parts += [1] * (f.degree - sum(parts))
    ct = CycleType(tuple(parts))
    return InertiaData(mu, ct, ct.order)


def branch_data(f):
    """Inertia data for every branch point (irreducible factor of Delta)."""
    delta = discriminant_in_t(f)
    try:
        deriv = q_factor(f.derivative())[1]
    except DegreeCapExceeded:
        deriv = None
    return [_inertia_over(f, mu, deriv) for mu, _ in q_factor(delta)[1]]


@dataclass(frozen=True)
class RamificationPrediction:
    inertia: InertiaData
    m_p: int
    predicted_index: Optional[int]

    def to_json(self):
        return {"inertia": self.inertia.to_json(), "m_p": self.m_p, "predicted_index": self.predicted_index}


def predict_ramification(f, a, p, data=None, branches=None):
    """Predicted ramification index at p of the specialization f(X) - a.

    An empty list means p is predicted unramified.
    """
    good, reasons = good_prime(f, p, data)
    if not good:
        raise BadPrime(f"{p} is not good for f(X) - t: {reasons}")
    a = as_rational(a)
    if not is_p_integral(a, p):
        raise NonIntegral(f"{a} is not {p}-integral")
    out = []
    for inert in branches if branches is not None else branch_data(f):
        bp = inert.branch_point
        mu = PolyQ((-bp, 1)) if isinstance(bp, Fraction) else bp
        if mu(a) == 0:
            raise ValueError(f"{format_rational(a)} is a branch point")
        m = intersection_mult(a, mu, p)
        if m > 0:
            idx = None
            if inert.inertia_order is not None:
                idx = inert.inertia_order // math.gcd(inert.inertia_order, m)
            out.append(RamificationPrediction(inert, m, idx))
    return out


# valuation witnesses


@dataclass(frozen=True)
class ValuationWitness:
    n: int
    p: int
    valuation: int
    target_e: int
    complete_factorization: bool = True


@dataclass(frozen=True)
class GcdSummary:
    n: int
    gcd: int
    primes: tuple
    complete_factorization: bool

    @property
    def condition_holds(self):
        return self.gcd == 1


def _orbit_values(f, t, n_max):
    x = as_rational(t)
    for n in range(1, n_max + 1):
        x = f(x)
        yield n, x


# orbit values wider than this are not factored; the walk stops there
MAX_ORBIT_BITS = 50_000


def find_valuation_witnesses(f, t, e, exclude=(), n_max=12, trial_bound=10**6, mode="a", use_rho=False,
                             max_bits=MAX_ORBIT_BITS):
    """Primes dividing f^n(t) to a power not divisible by e (mode a), or
    per-n gcd summaries of e with those valuations (mode b)."""
    if e < 2:
        raise ValueError("e must be >= 2")
    if mode not in ("a", "b"):
        raise ValueError("mode is 'a' or 'b'")
    exclude = set(exclude)
    out = []
    for n, x in _orbit_values(f, t, n_max):
        if x.numerator == 0 or x.numerator.bit_length() > max_bits:
            break
        facs, _, complete = factor_integer(x.numerator, trial_bound, use_rho)
        found = sorted((p, v) for p, v in facs.items() if p not in exclude)
        if mode == "a":
            out += [ValuationWitness(n, p, v, e, complete) for p, v in found if v % e]
        else:
            g = math.gcd(e, *(v for _, v in found))
            out.append(GcdSummary(n, g, tuple(p for p, _ in found), complete))
    return out


def revalidate(f, t, w):
    """Recompute nu_p(f^n(t)) exactly."""
    x = as_rational(t)
    for _ in range(w.n):
        x = f(x)
    return valuation(x, w.p) == w.valuation


# kernel-element witness scan


@dataclass(frozen=True)
class WitnessReport:
    critical_point: Fraction
    critical_value: Fraction
    n: int
    p: int
    valuation: int
    inertia_order: int
    predicted_order: int
    mode: str
    complete_factorization: bool = True

    def to_json(self):
        d = dict(self.__dict__)
        d["critical_point"] = format_rational(self.critical_point)
        d["critical_value"] = format_rational(self.critical_value)
        return d


def _prime_base(q):
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    return ps[0]


def kernel_witness_scan(f, q, n_max=10, trial_bound=10**6, mode="kernel", a=0, use_rho=False,
                        max_bits=MAX_ORBIT_BITS):
    """Primes p and levels n as in the kernel-element argument.

    For a wandering rational critical point with q | multiplicity, walk the
    orbit of its critical value t and keep good primes p with nu_p(f^(n-1)(t) - a)
    positive and coprime to q, each at its smallest n. mode="kernel" needs
    q prime and coprime to deg f; mode="stabilizer" allows prime powers.
    """
    ell = _prime_base(q)
    if mode == "kernel" and (ell != q or math.gcd(q, f.degree) != 1):
        raise ValueError("kernel mode needs a prime q coprime to deg f")
    a = as_rational(a)
    pts = [c for c in critical_points(f) if c.is_rational and c.mult_under % q == 0 and c.wandering]
    if not pts:
        raise NoWanderingWitness(f"no wandering rational critical point with {q} | multiplicity")
    data = GoodPrimeData(f)
    out = []
    used = set()
    for c in pts:
        t = c.value
        order = fiber_cycle_type(f, t).order
        x = t
        for n in range(1, n_max + 1):
            val = x - a
            if val.numerator.bit_length() > max_bits:
                break
            if val.numerator:
                facs, _, complete = factor_integer(val.numerator, trial_bound, use_rho)
                for p, v in sorted(facs.items()):
                    if v % ell == 0 or p in used or not data.is_good(p):
                        continue
                    used.add(p)
                    out.append(WitnessReport(
                        c.point, t, n, p, v, order, order // math.gcd(order, v), mode, complete
                    ))
            x = f(x)
    return out
