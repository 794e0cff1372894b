"""Iterated imprimitive wreath products and the partition-tree model.

A tower is listed top (block action) first: [G_1, G_2, ..., G_r] acts on
points i * D' + x, where i is a point of G_1 and x a point of the wreath
product D' of the remaining members. An element of the top group with a
cycle of length l permutes l blocks; the cycle product of the block maps
around it is an arbitrary element of the lower wreath product, and each of
its cycles of length m becomes a cycle of length l * m.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import permutations, product

from arbordyn.errors import DegreeMismatch, TooLarge
from arbordyn.exactalg.integers import prime_factors
from arbordyn.wreath.cycletype import CycleType
from arbordyn.wreath.groups import (
    AGL1,
    Cyclic,
    Holomorph,
    Symmetric,
    cycle_type_of,
    parse_group,
)

BRUTE_FORCE_LIMIT = 10**7


@dataclass(frozen=True)
class Tower:
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise ValueError("a tower needs at least one member")

    @classmethod
    def of(cls, *members):
        return cls(tuple(members))

    @classmethod
    def parse(cls, text):
        return cls(tuple(parse_group(s) for s in text.split(",") if s.strip()))

    @property
    def degree(self):
        return reduce(lambda x, g: x * g.degree, self.members, 1)

    def __str__(self):
        return "[" + ", ".join(str(g) for g in self.members) + "]"

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class TypeTree:
    """Top cycle type plus, for each of its cycles, a tree over the rest of the tower."""

    top: CycleType
    children: tuple = ()  # ((cycle length, TypeTree), ...) aligned with top.parts

    def flatten(self):
        if not self.children:
            return self.top
        parts = []
        for ell, child in self.children:
            parts += [ell * m for m in child.flatten().parts]
        return CycleType(tuple(parts))

    def to_json(self):
        out = {"top": list(self.top.parts)}
        if self.children:
            out["children"] = [{"cycle": ell, "tree": c.to_json()} for ell, c in self.children]
        return out


def _submultisets(items, ell, target):
    """Sub-multisets of the (value, count) list whose values are divisible by
    ell and whose sum is target; yields count vectors, larger parts first."""
    usable = [(v, c) for v, c in items if v % ell == 0 and v <= target]

    def rec(i, remaining):
        if remaining == 0:
            yield ()
            return
        if i == len(usable):
            return
        v, c = usable[i]
        for k in range(min(c, remaining // v), -1, -1):
            for rest in rec(i + 1, remaining - k * v):
                yield ((v, k),) + rest

    for choice in rec(0, target):
        yield tuple((v, k) for v, k in choice if k)


def _subtract(items, chosen):
    left = dict(items)
    for v, k in chosen:
        left[v] -= k
    return tuple((v, c) for v, c in sorted(left.items(), reverse=True) if c)


class _Search:
    def __init__(self, tower):
        self.members = tower.members
        self.sdeg = [1] * (len(self.members) + 1)
        for k in range(len(self.members) - 1, -1, -1):
            self.sdeg[k] = self.sdeg[k + 1] * self.members[k].degree
        self.types = [sorted(g.cycle_index(), reverse=True) for g in self.members]
        self.typesets = [set(ts) for ts in self.types]
        self.memo = {}
        self.amemo = {}

    def realize(self, items, k):
        key = (items, k)
        if key in self.memo:
            return self.memo[key]
        parts = CycleType(tuple(v for v, c in items for _ in range(c)))
        result = None
        if k == len(self.members) - 1:
            if parts in self.typesets[k]:
                result = TypeTree(parts)
        else:
            for lam in self.types[k]:
                if len(lam.parts) > len(parts.parts):
                    continue
                kids = self.assign(items, lam.parts, k)
                if kids is not None:
                    result = TypeTree(lam, kids)
                    break
        self.memo[key] = result
        return result

    def assign(self, items, lam, k):
        if not lam:
            return () if not items else None
        key = (items, lam, k)
        if key in self.amemo:
            return self.amemo[key]
        ell = lam[0]
        out = None
        for chosen in _submultisets(items, ell, ell * self.sdeg[k + 1]):
            sub = tuple((v // ell, c) for v, c in chosen)
            child = self.realize(sub, k + 1)
            if child is None:
                continue
            tail = self.assign(_subtract(items, chosen), lam[1:], k)
            if tail is not None:
                out = ((ell, child),) + tail
                break
        self.amemo[key] = out
        return out


def _items(tau):
    return tuple(sorted(tau.counter().items(), reverse=True))


def realizable_in_tower(tau, tower):
    """A TypeTree witnessing tau as a cycle type in the tower, or None."""
    if tau.degree != tower.degree:
        raise DegreeMismatch(f"type has degree {tau.degree}, tower has degree {tower.degree}")
    return _Search(tower).realize(_items(tau), 0)


def ordered_prime_factorizations(n):
    ps = []
    m = n
    for p in prime_factors(n):
        while m % p == 0:
            ps.append(p)
            m //= p
    return sorted(set(permutations(ps)))


def obstruction_all_towers(tau, n):
    """True iff tau is realizable in no AGL_1 tower of degree n."""
    if tau.degree != n:
        raise DegreeMismatch(f"type has degree {tau.degree}, expected {n}")
    for ps in ordered_prime_factorizations(n):
        if realizable_in_tower(tau, Tower(tuple(AGL1(p) for p in ps))) is not None:
            return False
    return True


def parity_necessary(tau, n, q):
    """Even-count test for types with parts in {1, q}, q an odd prime power not dividing n."""
    ps = prime_factors(q)
    if len(ps) != 1 or ps[0] == 2 or n % q == 0:
        return "Inapplicable"
    if any(x not in (1, q) for x in tau.parts):
        return "Inapplicable"
    return "Fail" if tau.count(q) % 2 else "Pass"


def full_cycle_proportion(tower):
    """Product of the members' full-cycle proportions."""
    out = Fraction(1)
    for g in tower.members:
        out *= g.full_cycle_proportion()
    return out


def _elements(members):
    if len(members) == 1:
        return members[0].elements()
    top = members[0].elements()
    sub = _elements(members[1:])
    n1 = members[0].degree
    if len(top) * len(sub) ** n1 > BRUTE_FORCE_LIMIT:
        raise TooLarge("wreath product too large to enumerate")
    d = len(sub[0])
    out = []
    for s in top:
        for taus in product(sub, repeat=n1):
            out.append(_compose_element(s, taus, d))
    return out


def _compose_element(s, taus, d):
    perm = []
    for i, t in enumerate(taus):
        base = s[i] * d
        perm += [base + x for x in t]
    return tuple(perm)


def wreath_order(tower):
    order = 1
    for g in reversed(tower.members):
        order = g.order * order**g.degree
    return order


def brute_force_tower(tower):
    """Cycle-type tally over every element of the wreath product, built explicitly."""
    if tower.degree > 12:
        raise TooLarge("brute force limited to degree 12")
    if wreath_order(tower) > BRUTE_FORCE_LIMIT:
        raise TooLarge("wreath product too large to enumerate")
    members = tower.members
    if len(members) == 1:
        return dict(Counter(cycle_type_of(x) for x in members[0].elements()))
    sub = _elements(members[1:])
    d = len(sub[0])
    tally = Counter()
    for s in members[0].elements():
        for taus in product(sub, repeat=members[0].degree):
            tally[cycle_type_of(_compose_element(s, taus, d))] += 1
    return dict(tally)


CATALOG = (
    AGL1(2), AGL1(3), Cyclic(2), Cyclic(3), Cyclic(4), Holomorph(4), Symmetric(3), Symmetric(4),
)


def catalog_towers(n, catalog=CATALOG):
    """Every tower over the catalog whose degree is n."""
    out = []

    def rec(prefix, rest):
        if rest == 1 and prefix:
            out.append(Tower(tuple(prefix)))
            return
        for g in catalog:
            if rest % g.degree == 0 and g.degree > 1:
                rec(prefix + [g], rest // g.degree)

    rec([], n)
    return out
