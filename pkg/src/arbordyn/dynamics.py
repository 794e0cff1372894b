"""Forward orbits, critical structure and recognition of density-zero hypotheses.

All orbit work is exact over Q. A rational point is certified wandering once
its naive height passes an explicit escape bound, after which heights grow
strictly. Critical points that are irrational are tracked only when their
critical value is rational, i.e. when f is constant modulo their minimal
polynomial.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from arbordyn.errors import DegreeCapExceeded
from arbordyn.exactalg.factor import q_factor, rational_roots
from arbordyn.exactalg.integers import prime_factors
from arbordyn.exactalg.parse import parse_poly, parse_rational
from arbordyn.exactalg.polyq import PolyQ, poly_gcd, squarefree_decomposition
from arbordyn.exactalg.rational import as_rational, format_rational, naive_height
from arbordyn.wreath.cycletype import CycleType

DEFAULT_STEPS = 64

APPLIES = "Applies"
DOES_NOT_APPLY = "DoesNotApply"
UNDETERMINED = "Undetermined"

CRITERIA = ("Thm1.1", "Cor1.2", "Cor1.3", "Cor1.4a", "Cor1.4b", "Thm1.5", "Lem4.4")


def _need_degree(f, k=2):
    if f.degree < k:
        raise ValueError(f"needs deg f >= {k}, got {f.degree}")


def multiplicity_under(f, alpha):
    """Multiplicity of alpha as a root of f(X) - f(alpha)."""
    _need_degree(f)
    shifted = f.taylor_shift(as_rational(alpha))
    return next(i for i, c in enumerate(shifted.coeffs) if i and c)


def linear_shift(f, a):
    """The conjugate (X - a) o f o (X + a)."""
    a = as_rational(a)
    return f.taylor_shift(a) - a


# escape heights


def escape_bound(f):
    """B with H(f(x)) >= H(x)^d / B for every rational x (H = naive height).

    With D the common denominator and b_i = D a_i, write x = u/w. The
    numerator of f(x) is N = sum b_i u^i w^(d-i), and gcd(N, D w^d) divides
    D b_d^d. If |u| >= K w then |N| >= (|b_d| - S/K) H^d with S = sum_{i<d} |b_i|;
    otherwise D w^d > D H^d / K^d. Taking K = max(1, 2S/|b_d|) keeps both
    constants positive.
    """
    _need_degree(f)
    d = f.degree
    den = f.common_denominator()
    b = [c * den for c in f.coeffs]
    bd = abs(b[-1])
    s = sum(abs(x) for x in b[:-1])
    k = max(Fraction(1), 2 * s / bd)
    c = min(bd - s / k, den / k**d)
    return Fraction(den) * bd**d / c


def escape_height(f):
    """Logarithmic height above which h(f(x)) > h(x) for every rational x."""
    bound = escape_bound(f)
    if bound <= 1:
        return 0.0
    return max(0.0, math.log(bound) / (f.degree - 1))


def _escaped(x, f_degree, bound):
    return Fraction(naive_height(x)) ** (f_degree - 1) > bound


# orbits


@dataclass(frozen=True)
class Preperiodic:
    tail_length: int
    cycle_length: int
    kind: str = "Preperiodic"


@dataclass(frozen=True)
class Wandering:
    certified_at_step: int
    kind: str = "Wandering"


@dataclass(frozen=True)
class Undetermined:
    steps_used: int
    kind: str = "Undetermined"


@dataclass(frozen=True)
class OrbitRecord:
    start: Fraction
    trajectory: tuple
    status: object

    @property
    def wandering(self):
        """True, False, or None when undetermined."""
        if isinstance(self.status, Wandering):
            return True
        if isinstance(self.status, Preperiodic):
            return False
        return None

    def to_json(self):
        st = {k: v for k, v in self.status.__dict__.items()}
        return {
            "start": format_rational(self.start),
            "trajectory": [format_rational(x) for x in self.trajectory],
            "status": st,
        }


def orbit_classify(f, x0, max_steps=DEFAULT_STEPS):
    """Iterate f from x0 until repetition, certified escape, or max_steps."""
    _need_degree(f)
    bound = escape_bound(f)
    d = f.degree
    x = as_rational(x0)
    traj = []
    seen = {}
    for n in range(max_steps + 1):
        traj.append(x)
        if x in seen:
            tail = seen[x]
            return OrbitRecord(as_rational(x0), tuple(traj), Preperiodic(tail, n - tail))
        seen[x] = n
        if _escaped(x, d, bound):
            return OrbitRecord(as_rational(x0), tuple(traj), Wandering(n))
        if n < max_steps:
            x = f(x)
    return OrbitRecord(as_rational(x0), tuple(traj), Undetermined(max_steps))


# critical structure


@dataclass(frozen=True)
class CriticalPoint:
    """A Galois orbit of critical points, given by a monic factor of f'."""

    minpoly: PolyQ
    mult_in_derivative: int
    value: Optional[Fraction]
    orbit: Optional[OrbitRecord]

    @property
    def mult_under(self):
        return self.mult_in_derivative + 1

    @property
    def is_rational(self):
        return self.minpoly.degree == 1

    @property
    def point(self):
        return -self.minpoly.coeff(0) if self.is_rational else None

    @property
    def wandering(self):
        return None if self.orbit is None else self.orbit.wandering

    def label(self):
        return format_rational(self.point) if self.is_rational else f"root of {self.minpoly}"

    def witness(self):
        if self.is_rational:
            return {"point": format_rational(self.point)}
        return {"minpoly": str(self.minpoly), "critical_value": format_rational(self.value)}


def _derivative_factors(df):
    """Monic factors of f' with multiplicities; irreducible when deg f' <= 32."""
    try:
        return q_factor(df)[1]
    except DegreeCapExceeded:
        pass
    out = []
    for g, m in squarefree_decomposition(df):
        rest = g
        for r, _ in rational_roots(g):
            lin = PolyQ((-r, 1))
            out.append((lin, m))
            rest = rest / lin
        if rest.degree >= 1:
            out.append((rest.monic(), m))
    return out


def _value_mod(f, g):
    r = f % g
    return r.coeff(0) if r.degree <= 0 else None


def critical_points(f, max_steps=DEFAULT_STEPS):
    _need_degree(f)
    out = []
    for g, m in _derivative_factors(f.derivative()):
        if g.degree == 1:
            pt = -g.coeff(0)
            out.append(CriticalPoint(g, m, f(pt), orbit_classify(f, pt, max_steps)))
        else:
            v = _value_mod(f, g)
            orb = None if v is None else orbit_classify(f, v, max_steps)
            out.append(CriticalPoint(g, m, v, orb))
    return out


def fiber_cycle_type(f, v):
    """Multiplicities of the roots of f(X) - v over Q-bar, as a partition."""
    parts = []
    for g, m in squarefree_decomposition(f - as_rational(v)):
        parts += [m] * g.degree
    return CycleType(tuple(parts))


@dataclass(frozen=True)
class CriticalReport:
    degree: int
    rational_critical_points: tuple
    irrational_critical_part: tuple
    critical_values_rational: tuple
    points: tuple = field(repr=False, default=())

    def bookkeeping_ok(self):
        total = sum(m - 1 for _, m, _ in self.rational_critical_points)
        total += sum(g.degree * m for g, m in self.irrational_critical_part)
        return total == self.degree - 1 and all(
            ct.degree == self.degree for _, ct in self.critical_values_rational
        )

    def to_json(self):
        return {
            "degree": self.degree,
            "rational_critical_points": [
                {"point": format_rational(a), "mult_under_f": m, "orbit": o.to_json()}
                for a, m, o in self.rational_critical_points
            ],
            "irrational_critical_part": [
                {"factor": str(g), "multiplicity_in_derivative": m}
                for g, m in self.irrational_critical_part
            ],
            "critical_values_rational": [
                {"value": format_rational(v), "fiber_cycle_type": list(ct.parts)}
                for v, ct in self.critical_values_rational
            ],
        }


def critical_structure(f, max_steps=DEFAULT_STEPS):
    pts = critical_points(f, max_steps)
    rational = tuple((c.point, c.mult_under, c.orbit) for c in pts if c.is_rational)
    irrational = tuple((c.minpoly, c.mult_in_derivative) for c in pts if not c.is_rational)
    values = sorted({c.value for c in pts if c.value is not None})
    fibers = tuple((v, fiber_cycle_type(f, v)) for v in values)
    return CriticalReport(f.degree, rational, irrational, fibers, tuple(pts))


# postcritical finiteness


@dataclass(frozen=True)
class PcfVerdict:
    kind: str  # "PCF" | "PostcriticallyInfinite" | "Undetermined"
    witness: dict

    def __str__(self):
        return self.kind


def classify_pcf(f, max_steps=DEFAULT_STEPS):
    pts = critical_points(f, max_steps)
    return _pcf_from_points(pts)


def _pcf_from_points(pts):
    for c in pts:
        if c.wandering:
            w = c.witness()
            w["certified_at_step"] = c.orbit.status.certified_at_step
            return PcfVerdict("PostcriticallyInfinite", w)
    blocked = [c.label() for c in pts if c.wandering is None]
    if blocked:
        return PcfVerdict("Undetermined", {"untracked": blocked})
    return PcfVerdict("PCF", {"critical_points": [c.label() for c in pts]})


# hypothesis recognition


@dataclass(frozen=True)
class HypothesisEntry:
    criterion: str
    verdict: str
    witness: dict

    def to_json(self):
        return {"criterion": self.criterion, "verdict": self.verdict, "witness": self.witness}


@dataclass(frozen=True)
class HypothesisReport:
    entries: tuple

    def __getitem__(self, criterion):
        for e in self.entries:
            if e.criterion == criterion:
                return e
        raise KeyError(criterion)

    def verdicts(self):
        return {e.criterion: e.verdict for e in self.entries}

    def to_json(self):
        return [e.to_json() for e in self.entries]


def _wander_witness(c):
    w = c.witness()
    w["certified_at_step"] = c.orbit.status.certified_at_step
    return w


def _scan(criterion, candidates, describe):
    """Applies on the first wandering candidate; Undetermined if any is untracked."""
    pending = []
    for c, extra in candidates:
        if c.wandering:
            w = _wander_witness(c)
            w.update(extra)
            return HypothesisEntry(criterion, APPLIES, w)
        if c.wandering is None:
            pending.append(c.label())
    if pending:
        return HypothesisEntry(criterion, UNDETERMINED, {"untracked": pending})
    return HypothesisEntry(criterion, DOES_NOT_APPLY, {"reason": describe})


def _coprime_prime(k, n):
    """Smallest prime q | k with gcd(q, n) = 1, or None."""
    for q in prime_factors(k):
        if math.gcd(q, n) == 1:
            return q
    return None


def _thm11(f, pts):
    d = f.degree
    cands = []
    for c in pts:
        q = _coprime_prime(c.mult_under, d)
        if q is not None:
            cands.append((c, {"multiplicity": c.mult_under, "q": q}))
    return _scan("Thm1.1", cands, "no wandering critical point with a suitable multiplicity")


def _is_unicritical(f, pts):
    return len(pts) == 1 and pts[0].is_rational and pts[0].mult_under == f.degree


def _cor12(f, pts):
    d = f.degree
    if prime_factors(d) != [d]:
        return HypothesisEntry("Cor1.2", DOES_NOT_APPLY, {"reason": f"degree {d} is not prime"})
    v = _pcf_from_points(pts)
    if v.kind == "PostcriticallyInfinite":
        w = dict(v.witness)
        w["degree"] = d
        w["route"] = "unicritical" if _is_unicritical(f, pts) else "general"
        return HypothesisEntry("Cor1.2", APPLIES, w)
    if v.kind == "PCF":
        return HypothesisEntry("Cor1.2", DOES_NOT_APPLY, {"reason": "postcritically finite"})
    return HypothesisEntry("Cor1.2", UNDETERMINED, v.witness)


def _odd_part(f):
    g = PolyQ.const(1)
    for h, m in squarefree_decomposition(f.derivative()):
        if m % 2:
            g = g * h
    return g


def _cor13(f, pts):
    g = _odd_part(f)
    if g.degree <= 0 or g.degree % 2:
        return HypothesisEntry(
            "Cor1.3", DOES_NOT_APPLY, {"reason": f"squarefree part g has degree {g.degree}"}
        )
    cands = [(c, {"g": str(g)}) for c in pts if c.mult_in_derivative % 2]
    return _scan("Cor1.3", cands, "no root of g is wandering")


def _taylor_data(f, a):
    """(k, b, g) with f = g (X - a)^k + b and g(a) != 0."""
    k = multiplicity_under(f, a)
    b = f(a)
    g = (f - b) / (PolyQ((-a, 1)) ** k)
    return k, b, g


def _cor14a(f, pts):
    cands = []
    for c in pts:
        if not c.is_rational:
            continue
        k, b, g = _taylor_data(f, c.point)
        q = _coprime_prime(k, g.degree) if g.degree > 0 else None
        if q is not None:
            cands.append((c, {"k": k, "b": format_rational(b), "g": str(g), "q": q}))
    return _scan("Cor1.4a", cands, "no rational critical point with the required shape")


def _trinomial_shape(f, a):
    """(r, d, s, k, b) if f(X + a) = b + s X^k + r X^d with the stated side conditions."""
    h = f.taylor_shift(a)
    idx = [i for i, c in enumerate(h.coeffs) if i and c]
    if len(idx) != 2:
        return None
    k, d = idx
    if d % 2 == 0 or not 1 < k < d or math.gcd(k, d) != 1:
        return None
    return h.coeff(d), d, h.coeff(k), k, h.coeff(0)


def _gamma_points(f, a, r, d, s, k, pts, max_steps):
    """Critical points gamma_i: roots of d r (X-a)^(d-k) + k s."""
    y = PolyQ((-a, 1))
    poly = d * r * y ** (d - k) + k * s
    out = []
    for g, _ in q_factor(poly)[1]:
        match = next((c for c in pts if c.minpoly == g), None)
        if match is None:
            if g.degree == 1:
                pt = -g.coeff(0)
                match = CriticalPoint(g, 1, f(pt), orbit_classify(f, pt, max_steps))
            else:
                v = _value_mod(f, g)
                orb = None if v is None else orbit_classify(f, v, max_steps)
                match = CriticalPoint(g, 1, v, orb)
        out.append(match)
    return out


def _cor14b(f, pts, max_steps):
    cands = []
    for c in pts:
        if not c.is_rational:
            continue
        shape = _trinomial_shape(f, c.point)
        if shape is None:
            continue
        r, d, s, k, b = shape
        extra = {
            "a": format_rational(c.point), "r": format_rational(r), "d": d,
            "s": format_rational(s), "k": k, "b": format_rational(b),
        }
        cands.append((c, dict(extra, gamma=0)))
        for i, gam in enumerate(_gamma_points(f, c.point, r, d, s, k, pts, max_steps), 1):
            cands.append((gam, dict(extra, gamma=i)))
    return _scan("Cor1.4b", cands, "no trinomial shape at a rational critical point")


def _is_squarefree(g):
    if g.degree <= 0:
        return True
    return poly_gcd(g, g.derivative()).degree == 0


def _thm15(f, pts):
    n = f.degree
    cands = []
    for c in pts:
        if not c.is_rational:
            continue
        k, b, g = _taylor_data(f, c.point)
        if k % 2 and n % k and _is_squarefree(g):
            cands.append((c, {"k": k, "b": format_rational(b), "g": str(g)}))
    return _scan("Thm1.5", cands, "no rational critical point with the required shape")


def _is_prime(n):
    return n >= 2 and prime_factors(n) == [n]


def _lem44_shape(f, c):
    """(a, k, b, m) if f - c = (X-a)^k (X-b)^m g with the lemma's conditions."""
    multiple = [(g, m) for g, m in squarefree_decomposition(f - c) if m > 1]
    if len(multiple) != 2 or any(g.degree != 1 for g, _ in multiple):
        return None
    (g1, k), (g2, m) = sorted(multiple, key=lambda t: t[1])
    if not (_is_prime(k) and _is_prime(m) and k <= m - 2):
        return None
    return -g1.coeff(0), k, -g2.coeff(0), m


def _lem44(f, pts, max_steps):
    cands = []
    done = set()
    for c in pts:
        if c.value is None or c.value in done:
            continue
        done.add(c.value)
        shape = _lem44_shape(f, c.value)
        if shape is None:
            continue
        a, k, b, m = shape
        orb = orbit_classify(f, c.value, max_steps)
        carrier = CriticalPoint(PolyQ((-c.value, 1)), 0, f(c.value), orb)
        cands.append((carrier, {
            "c": format_rational(c.value), "a": format_rational(a), "k": k,
            "b": format_rational(b), "m": m,
        }))
    return _scan("Lem4.4", cands, "no critical fiber of the required shape")


def check_hypotheses(f, max_steps=DEFAULT_STEPS):
    """Evaluate each density-zero criterion literally on f."""
    _need_degree(f)
    pts = critical_points(f, max_steps)
    return HypothesisReport((
        _thm11(f, pts),
        _cor12(f, pts),
        _cor13(f, pts),
        _cor14a(f, pts),
        _cor14b(f, pts, max_steps),
        _thm15(f, pts),
        _lem44(f, pts, max_steps),
    ))


# independent re-checks of Applies witnesses


def _witness_wanders(f, w, max_steps):
    if "point" in w:
        start = parse_rational(w["point"])
    else:
        g = parse_poly(w["minpoly"])
        start = _value_mod(f, g)
        if start is None or start != parse_rational(w["critical_value"]):
            return False
    return orbit_classify(f, start, max_steps).wandering is True


def _witness_mult(f, w):
    if "point" in w:
        return multiplicity_under(f, parse_rational(w["point"]))
    g = parse_poly(w["minpoly"])
    df, m = f.derivative(), 0
    while (df % g).is_zero():
        df, m = df / g, m + 1
    return m + 1


def recheck(f, entry, max_steps=DEFAULT_STEPS):
    """Re-derive an Applies verdict from its witness alone."""
    if entry.verdict != APPLIES:
        return False
    w = entry.witness
    d = f.degree
    cid = entry.criterion
    if cid == "Lem4.4":
        c = parse_rational(w["c"])
        shape = _lem44_shape(f, c)
        return (
            shape is not None
            and shape[1] == w["k"] and shape[3] == w["m"]
            and orbit_classify(f, c, max_steps).wandering is True
        )
    if not _witness_wanders(f, w, max_steps):
        return False
    mult = _witness_mult(f, w)
    if cid == "Thm1.1":
        q = w["q"]
        return mult == w["multiplicity"] and mult % q == 0 and _is_prime(q) and math.gcd(q, d) == 1
    if cid == "Cor1.2":
        return _is_prime(d)
    if cid == "Cor1.3":
        g = _odd_part(f)
        return g.degree > 0 and g.degree % 2 == 0 and (mult - 1) % 2 == 1
    if cid in ("Cor1.4a", "Thm1.5"):
        a = parse_rational(w["point"])
        k, b, g = _taylor_data(f, a)
        if k != w["k"] or g(a) == 0:
            return False
        if cid == "Cor1.4a":
            q = w["q"]
            return k % q == 0 and _is_prime(q) and math.gcd(q, g.degree) == 1
        return k % 2 == 1 and d % k != 0 and _is_squarefree(g)
    if cid == "Cor1.4b":
        a = parse_rational(w["a"])
        shape = _trinomial_shape(f, a)
        if shape is None or shape[1] != w["d"] or shape[3] != w["k"]:
            return False
        r, dd, s, k, _ = shape
        if w["gamma"] == 0:
            return "point" in w and parse_rational(w["point"]) == a
        gam = PolyQ((-a, 1))
        poly = dd * r * gam ** (dd - k) + k * s
        key = parse_poly(w["minpoly"]) if "minpoly" in w else PolyQ((-parse_rational(w["point"]), 1))
        return (poly % key).is_zero()
    return False
