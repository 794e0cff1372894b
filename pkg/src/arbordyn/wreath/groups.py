"""Small transitive permutation groups and their cycle-type distributions."""

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from arbordyn.errors import TooLarge
from arbordyn.exactalg.integers import divisors, euler_phi, is_probable_prime
from arbordyn.wreath.cycletype import CycleType

ENUMERATION_LIMIT = 10**6


def cycle_type_of(perm):
    """Cycle type of a permutation given as a tuple image list."""
    n = len(perm)
    seen = bytearray(n)
    parts = []
    for i in range(n):
        if not seen[i]:
            k = 0
            j = i
            while not seen[j]:
                seen[j] = 1
                j = perm[j]
                k += 1
            parts.append(k)
    return CycleType(tuple(parts))


def partitions(n, largest=None):
    """All partitions of n as descending tuples."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def _centralizer(parts):
    z = 1
    for k, m in Counter(parts).items():
        z *= k**m * math.factorial(m)
    return z


@dataclass(frozen=True)
class Group:
    """A transitive group: kind in {AGL1, Cyclic, Symmetric, Holomorph, Explicit}."""

    kind: str
    n: int
    gens: tuple = ()

    @property
    def degree(self):
        return self.n

    @property
    def order(self):
        if self.kind == "AGL1":
            return self.n * (self.n - 1)
        if self.kind == "Cyclic":
            return self.n
        if self.kind == "Symmetric":
            return math.factorial(self.n)
        if self.kind == "Holomorph":
            return self.n * euler_phi(self.n)
        return len(self.elements())

    def __str__(self):
        if self.kind == "Explicit":
            return f"Explicit(degree={self.n}, gens={len(self.gens)})"
        return f"{self.kind}({self.n})"

    def elements(self):
        if self.order_bound() > ENUMERATION_LIMIT:
            raise TooLarge(f"{self} has more than {ENUMERATION_LIMIT} elements")
        n = self.n
        if self.kind == "Symmetric":
            return list(permutations(range(n)))
        if self.kind == "Cyclic":
            return [tuple((x + b) % n for x in range(n)) for b in range(n)]
        if self.kind in ("AGL1", "Holomorph"):
            units = [a for a in range(1, n) if math.gcd(a, n) == 1] if n > 1 else [0]
            return [tuple((a * x + b) % n for x in range(n)) for a in units for b in range(n)]
        return _closure(self.gens, n)

    def order_bound(self):
        if self.kind == "Explicit":
            return 0  # closure enforces the limit while enumerating
        return self.order

    def cycle_index(self):
        """{CycleType: count}."""
        if self.kind == "AGL1":
            return dict(agl1_types(self.n))
        if self.kind == "Cyclic":
            out = Counter()
            for d in divisors(self.n):
                out[CycleType((d,) * (self.n // d))] += euler_phi(d)
            return dict(out)
        if self.kind == "Symmetric":
            f = math.factorial(self.n)
            return {CycleType(lam): f // _centralizer(lam) for lam in partitions(self.n)}
        return dict(Counter(cycle_type_of(g) for g in self.elements()))

    def full_cycle_proportion(self):
        if self.kind == "AGL1":
            return Fraction(1, self.n)
        if self.kind == "Cyclic":
            return Fraction(euler_phi(self.n), self.n)
        if self.kind == "Symmetric":
            return Fraction(1, self.n)
        if self.kind == "Holomorph":
            return holomorph_full_cycles(self.n)
        ci = self.cycle_index()
        return Fraction(ci.get(CycleType((self.n,)), 0), sum(ci.values()))


def AGL1(p):
    if not is_probable_prime(p):
        raise ValueError(f"AGL1 needs a prime, got {p}")
    return Group("AGL1", p)


def Cyclic(n):
    return Group("Cyclic", n)


def Symmetric(n):
    if n > 8:
        raise TooLarge("Symmetric(n) is limited to n <= 8")
    return Group("Symmetric", n)


def Holomorph(m):
    if m > 64:
        raise TooLarge("Holomorph(m) is limited to m <= 64")
    return Group("Holomorph", m)


def Explicit(gens):
    gens = tuple(tuple(g) for g in gens)
    n = len(gens[0])
    if n > 12:
        raise TooLarge("explicit groups are limited to degree 12")
    if any(sorted(g) != list(range(n)) for g in gens):
        raise ValueError("generators must be permutations of 0..n-1")
    grp = Group("Explicit", n, gens)
    if not _transitive(gens, n):
        raise ValueError("explicit group is not transitive")
    return grp


def _transitive(gens, n):
    reach = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for g in gens:
            if g[x] not in reach:
                reach.add(g[x])
                stack.append(g[x])
    return len(reach) == n


def _closure(gens, n):
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                c = tuple(g[h[i]] for i in range(n))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
                    if len(seen) > ENUMERATION_LIMIT:
                        raise TooLarge("explicit group too large to enumerate")
        frontier = nxt
    return sorted(seen)


GROUP_KINDS = {"AGL1": AGL1, "Cyclic": Cyclic, "Symmetric": Symmetric, "Holomorph": Holomorph}

_SHORT = {"agl": "AGL1", "cyc": "Cyclic", "c": "Cyclic", "sym": "Symmetric", "s": "Symmetric", "hol": "Holomorph"}


def parse_group(text):
    """``agl3``, ``AGL1(3)``, ``cyc4``, ``sym3``, ``hol9`` and similar."""
    import re

    s = text.strip()
    m = re.fullmatch(r"(AGL1|Cyclic|Symmetric|Holomorph)\((\d+)\)", s)
    if m:
        return GROUP_KINDS[m.group(1)](int(m.group(2)))
    m = re.fullmatch(r"([a-zA-Z]+?)1?(\d+)", s)
    if m and m.group(1).lower() in _SHORT:
        return GROUP_KINDS[_SHORT[m.group(1).lower()]](int(m.group(2)))
    raise ValueError(f"unknown group descriptor {text!r}")


def agl1_types(p):
    """Cycle-type distribution of AGL_1(p) in closed form."""
    if p > 10**4:
        raise TooLarge("agl1_types limited to p <= 10^4")
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    out = [(CycleType((1,) * p), 1), (CycleType((p,)), p - 1)]
    for d in divisors(p - 1):
        if d > 1:
            out.append((CycleType((1,) + (d,) * ((p - 1) // d)), p * euler_phi(d)))
    return out


def group_cycle_index(g):
    """Cycle-type distribution by explicit enumeration of the group's elements."""
    return dict(Counter(cycle_type_of(x) for x in g.elements()))


def holomorph_full_cycles(m):
    """Proportion of maps x -> a x + b (a a unit mod m) that are m-cycles.

    A transitive affine map stays transitive modulo every prime r | m, which
    forces b to be a unit. For unit b the orbit of 0 is b * S_k(a) with
    S_k(a) = 1 + a + ... + a^(k-1), so the map is an m-cycle iff the first
    k >= 1 with S_k(a) = 0 mod m is k = m. The count over a is vectorized.
    """
    if m < 1 or m > 10**4:
        raise TooLarge("holomorph_full_cycles limited to 1 <= m <= 10^4")
    if m == 1:
        return Fraction(1)
    units = np.array([a for a in range(1, m) if math.gcd(a, m) == 1], dtype=np.int64)
    s = np.ones_like(units)
    alive = np.ones(len(units), dtype=bool)
    for _ in range(1, m - 1):
        # s holds S_k; S_{k+1} = a S_k + 1
        s = (units * s + 1) % m
        alive &= s != 0
    good = int(np.count_nonzero(alive))
    # the orbit of 0 has at most m points, so survivors vanish exactly at k = m
    return Fraction(good, m)
