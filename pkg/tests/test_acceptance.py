"""Acceptance checks. Each test prints one PASS/FAIL line in the terminal summary."""

import random
import time
from fractions import Fraction

import pytest

from arbordyn.census import Scenario, decay_from_report, run_census
from arbordyn.dynamics import linear_shift
from arbordyn.errors import UndefinedReduction
from arbordyn.exactalg import PolyQ, parse_poly
from arbordyn.exactalg.integers import sieve
from arbordyn.exactalg.rational import valuation
from arbordyn.stability import (
    depth_stable,
    find_valuation_witnesses,
    good_prime,
    predict_ramification,
    revalidate,
    unicritical_exact_stable,
)
from arbordyn.wreath import (
    AGL1,
    CATALOG,
    CycleType,
    Cyclic,
    Symmetric,
    Tower,
    brute_force_tower,
    catalog_towers,
    full_cycle_proportion,
    group_cycle_index,
    holomorph_full_cycles,
    ordered_prime_factorizations,
    parity_necessary,
    partitions,
    realizable_in_tower,
)

pytestmark = pytest.mark.acceptance

P = parse_poly
TOL = Fraction(15, 1000)


def _census(f, a, mode, depth=None, pmax=10**5):
    t = time.perf_counter()
    r = run_census(Scenario(P(f), Fraction(a), pmax, mode, depth))
    return r, time.perf_counter() - t


def test_generic_cubic_density(record):
    """1 - x^3, a in {3, 5, 7}, exact mode, p <= 1e5: two of three within 0.015 of 2/9"""
    t0 = time.perf_counter()
    near_generic, outliers = 0, []
    for a in (3, 5, 7):
        r, _ = _census("1-x^3", a, "exact")
        d = r.density
        record(f"a={a}: {float(d):.4f}")
        if abs(d - Fraction(2, 9)) <= TOL:
            near_generic += 1
        else:
            outliers.append((a, d))
    elapsed = time.perf_counter() - t0
    record(f"{elapsed:.1f}s")
    for a, d in outliers:
        record(f"outlier a={a} at {float(d):.4f}")
        assert abs(d - Fraction(1, 3)) <= TOL
    assert near_generic >= 2
    assert elapsed <= 60


def test_special_cubic_density(record):
    """1 - x^3, a = -1/7, exact mode, p <= 1e5: within 0.015 of 1/3"""
    r, elapsed = _census("1-x^3", Fraction(-1, 7), "exact")
    record(f"{float(r.density):.4f} in {elapsed:.1f}s")
    assert abs(r.density - Fraction(1, 3)) <= TOL
    assert elapsed <= 60


def test_dickson_maximum(record):
    """x^3 - 3x, a = -1, depth 3, p <= 1e5: within 0.015 of 2/3, depth 1 vs 3 within 0.005"""
    r, elapsed = _census("x^3-3x", -1, "depth", 3)
    prof = decay_from_report(r)
    record(f"depths 1..3: {', '.join(f'{float(x):.4f}' for x in prof)} in {elapsed:.1f}s")
    assert abs(r.density - Fraction(2, 3)) <= TOL
    assert abs(prof[0] - prof[2]) <= Fraction(5, 1000)
    assert elapsed <= 300


def test_quadratic_decay(record):
    """x^2 + 1, a = 0, depths 1..8, p <= 1e5: 1/2 at depth 1, ratios <= 0.75, depth 8 <= 0.02"""
    r, elapsed = _census("x^2+1", 0, "depth", 8)
    prof = decay_from_report(r)
    ratios = [prof[i] / prof[i - 1] for i in range(1, 8)]
    record(f"densities {', '.join(f'{float(x):.4f}' for x in prof)}; max ratio {float(max(ratios)):.3f}; {elapsed:.1f}s")
    assert abs(prof[0] - Fraction(1, 2)) <= Fraction(1, 100)
    assert all(x <= Fraction(3, 4) for x in ratios)
    assert prof[7] <= Fraction(2, 100)


def test_quadratic_maximum(record):
    """x^2 - 2, a = 0, exact mode, p <= 1e5: stable iff p = 3, 5 mod 8; density within 0.01 of 1/2"""
    r, elapsed = _census("x^2-2", 0, "exact")
    wrong = [p for p, v, *_ in r.rows if (v == "stable") != (p % 8 in (3, 5))]
    record(f"{float(r.density):.4f}, {len(wrong)} mismatches, {elapsed:.1f}s")
    assert not wrong
    assert abs(r.density - Fraction(1, 2)) <= Fraction(1, 100)


# cross-engine agreement

REACHABLE = {2: 8, 3: 5}  # deepest levels with degree <= 256


def _unicritical_scenarios(n=200, seed=0):
    rng = random.Random(seed)
    primes = [int(p) for p in sieve(10**4)]
    out = []
    while len(out) < n:
        u = rng.choice([1, -1, 2, -2, 3, Fraction(1, 2)])
        d = rng.choice([2, 3])
        v = Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3]))
        a = Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2]))
        p = rng.choice(primes[2:])
        out.append((u, d, v, a, p))
    return out


@pytest.fixture(scope="module")
def cross_engine():
    rows = []
    for u, d, v, a, p in _unicritical_scenarios():
        f = PolyQ((v,) + (0,) * (d - 1) + (u,))
        ex = unicritical_exact_stable(u, d, v, a, p)
        dep = depth_stable(f, a, p, 30, max_degree=256, on_cap="truncate")
        rows.append((ex, dep, REACHABLE[d]))
    return rows


def _contradicts(ex, dep, reach):
    if ex.stable:
        return not dep.stable
    if ex.level <= reach:
        return dep.stable or dep.level != ex.level
    return not dep.stable


def test_cross_engine_depth_30(record, cross_engine):
    """exact vs depth-30 engine on 200 random unicritical scenarios, p < 1e4: never contradict"""
    contradictions = sum(_contradicts(*row) for row in cross_engine)
    unverified = sum(1 for ex, dep, _ in cross_engine if ex.stable and (dep.truncated or dep.level != 30))
    record(f"{contradictions} contradictions; {unverified} exact-stable scenarios need degree up to d^30, unreachable")
    assert contradictions == 0
    assert unverified == 0, "depth-30 verdicts need iterate degree d^30; see the decisions ledger"


def test_cross_engine_reachable_depth(record, cross_engine):
    """exact vs depth engine at reachable depth (8 for d=2, 5 for d=3) on the same 200 scenarios"""
    contradictions = sum(_contradicts(*row) for row in cross_engine)
    n_stable = sum(1 for ex, _, _ in cross_engine if ex.stable)
    deep = sum(1 for ex, _, _ in cross_engine if not ex.stable and ex.level > 1)
    # random scenarios are mostly unstable at level 1; sweep a few families over all primes too
    rng = random.Random(2)
    sweep = sweep_stable = 0
    for u, d, v, a, _ in rng.sample(_unicritical_scenarios(), 10):
        f = PolyQ((v,) + (0,) * (d - 1) + (u,))
        for p in sieve(1000)[2:]:
            p = int(p)
            ex = unicritical_exact_stable(u, d, v, a, p)
            dep = depth_stable(f, a, p, 30, max_degree=256, on_cap="truncate")
            contradictions += _contradicts(ex, dep, REACHABLE[d])
            sweep += 1
            sweep_stable += ex.stable
    record(f"{contradictions} contradictions; random: {n_stable} stable, {deep} unstable beyond level 1; "
           f"sweep: {sweep} cases, {sweep_stable} stable")
    assert contradictions == 0


def test_shift_invariance(record):
    """depth verdict of (f, a) equals that of (f(x+a) - a, 0) on 500 random samples"""
    rng = random.Random(1)
    primes = [int(p) for p in sieve(200)[2:]]
    mismatches = 0
    for _ in range(500):
        d = rng.choice([2, 3])
        coeffs = [Fraction(rng.randint(-5, 5), rng.choice([1, 2, 3])) for _ in range(d)]
        coeffs.append(Fraction(rng.choice([1, -1, 2, 3]), rng.choice([1, 2])))
        f = PolyQ(tuple(coeffs))
        a = Fraction(rng.randint(-5, 5), rng.choice([1, 2, 3]))
        p = rng.choice(primes)
        n = rng.randint(1, 5)
        lhs = depth_stable(f, a, p, n)
        rhs = depth_stable(linear_shift(f, a), 0, p, n)
        mismatches += lhs.outcome() != rhs.outcome()
    record(f"{mismatches} mismatches")
    assert mismatches == 0


def test_wreath_oracle_equivalence(record):
    """tree search vs element enumeration for every partition and catalog tower of degree 4, 6, 8, 9, 12"""
    t0 = time.perf_counter()
    checked = disagreements = 0
    for n in (4, 6, 8, 9, 12):
        lams = list(partitions(n))
        for tw in catalog_towers(n):
            support = set(brute_force_tower(tw))
            for lam in lams:
                tau = CycleType(lam)
                tree = realizable_in_tower(tau, tw)
                ok = (tree is not None) == (tau in support) and (tree is None or tree.flatten() == tau)
                disagreements += not ok
                checked += 1
    elapsed = time.perf_counter() - t0
    record(f"{checked} (type, tower) pairs, {disagreements} disagreements, {elapsed:.1f}s")
    assert disagreements == 0
    assert elapsed <= 120


def test_full_cycle_values(record):
    """full-cycle proportions: products match enumeration on catalog pairs; 4/9, 1/9; cyclic-top scaling"""
    pairs = 0
    for g in CATALOG:
        for h in CATALOG:
            if g.degree * h.degree > 12:
                continue
            tw = Tower.of(g, h)
            tally = brute_force_tower(tw)
            exact = Fraction(tally.get(CycleType((tw.degree,)), 0), sum(tally.values()))
            assert exact == full_cycle_proportion(tw), str(tw)
            pairs += 1
    assert full_cycle_proportion(Tower.of(Cyclic(3), Cyclic(3))) == Fraction(4, 9)
    assert full_cycle_proportion(Tower.of(AGL1(3), AGL1(3))) == Fraction(1, 9)
    for p in (2, 3):
        for h in (Cyclic(3), Symmetric(3)):
            tally = brute_force_tower(Tower.of(Cyclic(p), h))
            c_u = Fraction(tally.get(CycleType((p * h.degree,)), 0), sum(tally.values()))
            c_v = Fraction(group_cycle_index(h).get(CycleType((h.degree,)), 0), h.order)
            assert c_u == Fraction(p - 1, p) * c_v
    record(f"{pairs} catalog pairs enumerated")


def test_parity(record):
    """parity Fail implies no AGL1 tower realizes the type; (3,1^46) Fail; (3,3,1^43) Pass with witness"""
    checked = 0
    for n in (9, 21, 49):
        for k in range(n // 3 + 1):
            tau = CycleType((3,) * k + (1,) * (n - 3 * k))
            verdict = parity_necessary(tau, n, 3)
            if verdict == "Fail":
                for ps in ordered_prime_factorizations(n):
                    assert realizable_in_tower(tau, Tower(tuple(AGL1(p) for p in ps))) is None
                checked += 1
    assert parity_necessary(CycleType.parse("3,1x46"), 49, 3) == "Fail"
    assert parity_necessary(CycleType.parse("3,3,1x43"), 49, 3) == "Pass"
    tree = realizable_in_tower(CycleType.parse("3,3,1x43"), Tower.of(AGL1(7), AGL1(7)))
    assert tree is not None and tree.flatten() == CycleType.parse("3,3,1x43")
    record(f"{checked} Fail cases confirmed unrealizable (degrees 9 and 21 are inapplicable for q=3)")


def test_holomorph(record):
    """holomorph full-cycle proportion: 1/3 for m = 3, 9, 27 and 1/4 for m = 4"""
    vals = {m: holomorph_full_cycles(m) for m in (3, 9, 27, 4)}
    record(", ".join(f"m={m}: {v}" for m, v in vals.items()))
    assert vals[3] == vals[9] == vals[27] == Fraction(1, 3)
    assert vals[4] == Fraction(1, 4)


def test_ramification_oracle(record):
    """x^2 - t: predicted index 2 iff nu_p(a) odd, 100 random (a, p) with p odd and good"""
    rng = random.Random(5)
    f = P("x^2")
    primes = [int(p) for p in sieve(100)[1:]]
    done = wrong = 0
    while done < 100:
        p = rng.choice(primes)
        a = Fraction(rng.choice([1, -1]) * rng.randint(1, 10**4))
        if not good_prime(f, p)[0]:
            continue
        try:
            preds = predict_ramification(f, a, p)
        except UndefinedReduction:
            continue
        index2 = any(x.predicted_index == 2 for x in preds)
        wrong += index2 != (valuation(a, p) % 2 == 1)
        done += 1
    record(f"{wrong} mismatches in {done}")
    assert wrong == 0


def test_valuation_witnesses(record):
    """x^2 + 1 from t = 1, e = 2, n <= 12, trial bound 1e6: at least 8 distinct primes, all revalidated"""
    f = P("x^2+1")
    ws = find_valuation_witnesses(f, 1, 2, n_max=12, trial_bound=10**6)
    primes = {w.p for w in ws}
    bad = [w for w in ws if not revalidate(f, 1, w) or w.valuation % 2 == 0]
    record(f"{len(ws)} witnesses, {len(primes)} distinct primes, {len(bad)} failed revalidation")
    assert len(primes) >= 8
    assert not bad
