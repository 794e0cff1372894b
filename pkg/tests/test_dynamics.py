import random
from fractions import Fraction

import pytest
import sympy

from arbordyn.dynamics import (
    APPLIES,
    DOES_NOT_APPLY,
    UNDETERMINED,
    check_hypotheses,
    classify_pcf,
    critical_structure,
    escape_height,
    linear_shift,
    multiplicity_under,
    orbit_classify,
    recheck,
)
from arbordyn.exactalg import PolyQ, parse_poly
from arbordyn.exactalg.rational import log_height

P = parse_poly
X = sympy.Symbol("x")


def random_poly(rng, lo=3, hi=4, c=5):
    d = rng.randint(lo, hi)
    coeffs = [rng.randint(-c, c) for _ in range(d)] + [rng.choice([-2, -1, 1, 2, 3])]
    return PolyQ(tuple(coeffs))


def test_multiplicity_examples():
    assert multiplicity_under(P("x^3-3x"), 1) == 2
    assert multiplicity_under(P("x^5"), 0) == 5
    assert multiplicity_under(P("x^2+1"), 5) == 1


def test_multiplicity_matches_derivative_roots():
    rng = random.Random(7)
    seen = 0
    for _ in range(100):
        f = random_poly(rng)
        df = sympy.Poly([int(c) for c in reversed(f.derivative().coeffs)], X)
        for r, m in sympy.roots(df, filter="Q").items():
            seen += 1
            assert multiplicity_under(f, Fraction(int(r.p), int(r.q))) - 1 == m
    assert seen > 10


def test_orbit_examples():
    r = orbit_classify(P("1-x^3"), 0)
    assert (r.status.kind, r.status.tail_length, r.status.cycle_length) == ("Preperiodic", 0, 2)
    r = orbit_classify(P("x^2+1"), 0)
    assert r.status.kind == "Wandering" and r.status.certified_at_step <= 6
    assert r.trajectory[:4] == (0, 1, 2, 5)
    r = orbit_classify(P("x^3-3x"), -2)
    assert (r.status.tail_length, r.status.cycle_length) == (0, 1)


@pytest.mark.parametrize("f", ["x^2+1", "x^3-3x", "2x^2-1/3", "x^4-x+1"])
def test_escape_height_property(f):
    f = P(f)
    big_h = escape_height(f)
    rng = random.Random(3)
    for _ in range(2000):
        h = big_h + rng.uniform(1e-9, 5)
        top = max(2, int(round(2.718281828459045**h)))
        other = rng.randint(1, top)
        x = Fraction(top, other) if rng.random() < 0.5 else Fraction(other, top)
        x = -x if rng.random() < 0.5 else x
        if log_height(x) <= big_h:
            continue
        assert log_height(f(x)) > log_height(x)


def test_escape_height_monomial():
    assert escape_height(P("x^2")) == 0


def test_wandering_certificate_is_sound():
    rng = random.Random(11)
    checked = 0
    for _ in range(60):
        f = random_poly(rng, 2, 3, 3)
        x0 = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        rec = orbit_classify(f, x0, 40)
        if rec.wandering is not True:
            continue
        checked += 1
        x = rec.trajectory[rec.status.certified_at_step]
        h = log_height(x)
        for _ in range(20):
            x = f(x)
            assert log_height(x) > h
            h = log_height(x)
            if h > 4000:
                break
    assert checked > 10


def test_critical_structure_examples():
    rep = critical_structure(P("x^3-3x"))
    assert sorted((a, m) for a, m, _ in rep.rational_critical_points) == [(-1, 2), (1, 2)]
    fibers = dict(rep.critical_values_rational)
    assert str(fibers[Fraction(-2)]) == "(2,1)"
    rep = critical_structure(P("1-x^3"))
    assert [(a, m) for a, m, _ in rep.rational_critical_points] == [(0, 3)]
    assert str(dict(rep.critical_values_rational)[Fraction(1)]) == "(3)"
    rep = critical_structure(P("x^2+1"))
    assert str(dict(rep.critical_values_rational)[Fraction(1)]) == "(2)"


def test_critical_bookkeeping_random():
    rng = random.Random(5)
    for _ in range(40):
        f = random_poly(rng, 2, 5, 4)
        rep = critical_structure(f, 16)
        assert rep.bookkeeping_ok()
        for _, ct in rep.critical_values_rational:
            assert ct.degree == f.degree


def test_linear_shift():
    assert linear_shift(P("x^2"), 0) == P("x^2")
    assert linear_shift(P("x^2+1"), 1) == P("x^2+2x+1")
    f = P("x^3-2x+1/2")
    assert linear_shift(linear_shift(f, Fraction(3, 2)), Fraction(-3, 2)) == f


def test_orbit_shift_correspondence():
    rng = random.Random(9)
    for _ in range(60):
        f = random_poly(rng, 2, 3, 3)
        a = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        x0 = Fraction(rng.randint(-3, 3))
        r1 = orbit_classify(f, x0, 20)
        r2 = orbit_classify(linear_shift(f, a), x0 - a, 20)
        assert type(r1.status) is type(r2.status)
        if r1.status.kind == "Preperiodic":
            assert (r1.status.tail_length, r1.status.cycle_length) == (r2.status.tail_length, r2.status.cycle_length)
        n = min(len(r1.trajectory), len(r2.trajectory))
        assert all(y == z + a for y, z in zip(r1.trajectory[:n], r2.trajectory[:n]))


@pytest.mark.parametrize("f", ["x^2-2", "x^2", "1-x^3", "x^3-3x"])
def test_pcf_family(f):
    assert classify_pcf(P(f)).kind == "PCF"


@pytest.mark.parametrize("f", ["x^2+1", "x^2+x+1"])
def test_postcritically_infinite(f):
    assert classify_pcf(P(f)).kind == "PostcriticallyInfinite"


def test_pcf_irrational_critical_points_undetermined():
    assert classify_pcf(P("x^3+x")).kind == "Undetermined"


def test_hypotheses_examples():
    rep = check_hypotheses(P("x^2+1"))
    assert rep["Thm1.1"].verdict == DOES_NOT_APPLY
    assert rep["Cor1.2"].verdict == APPLIES
    assert all(v == DOES_NOT_APPLY for v in check_hypotheses(P("x^3-3x")).verdicts().values())
    rep = check_hypotheses(P("(x^2-2)*(x-1)^3+5"))
    assert rep["Thm1.5"].verdict == APPLIES
    assert rep["Thm1.1"].verdict == APPLIES
    assert rep["Thm1.1"].witness["q"] == 3


def test_every_applies_rechecks():
    rng = random.Random(13)
    polys = [P(s) for s in ["x^2+1", "(x^2-2)*(x-1)^3+5", "x^3+x^2+1", "x^5+x^3+3", "(x-1)^3*x+3"]]
    polys += [random_poly(rng, 2, 5, 3) for _ in range(25)]
    n_applies = 0
    for f in polys:
        for e in check_hypotheses(f, 32).entries:
            assert e.verdict in (APPLIES, DOES_NOT_APPLY, UNDETERMINED)
            if e.verdict == APPLIES:
                n_applies += 1
                assert e.witness
                assert recheck(f, e, 32), (str(f), e)
    assert n_applies >= 5
