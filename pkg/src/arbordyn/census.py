"""Prime census: run a stability engine over all primes up to a bound.

Primes are produced by a segmented sieve, split into fixed chunks, and
evaluated either inline or by a process pool. Chunk results are merged in
ascending prime order, so reports do not depend on the worker count.
"""

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from arbordyn.errors import BoundTooLarge, DegreeCapExceeded
from arbordyn.exactalg.integers import sieve
from arbordyn.exactalg.parse import parse_poly, parse_rational
from arbordyn.exactalg.polyq import PolyQ
from arbordyn.exactalg.rational import as_rational, format_rational
from arbordyn.stability import (
    DEGREE_DROP,
    UNDEFINED,
    GoodPrimeData,
    depth_stable,
    unicritical_exact_stable,
    unicritical_shape,
)

SIEVE_LIMIT = 10**8
SEGMENT = 1 << 18
CHUNK = 256
DEFAULT_CENSUS_MAX_DEGREE = 4096
Z95 = 1.959963984540054

CSV_COLUMNS = ("prime", "verdict", "fail_level", "orbit_period")


def prime_stream(bound):
    """All primes <= bound in ascending order (segmented sieve)."""
    if bound > SIEVE_LIMIT:
        raise BoundTooLarge(f"prime bound {bound} exceeds {SIEVE_LIMIT}")
    if bound < 2:
        return
    base = [int(p) for p in sieve(math.isqrt(bound))]
    for lo in range(2, bound + 1, SEGMENT):
        hi = min(lo + SEGMENT, bound + 1)
        mark = np.ones(hi - lo, dtype=bool)
        for p in base:
            if p * p >= hi:
                break
            start = max(p * p, -(-lo // p) * p)
            mark[start - lo::p] = False
        for x in np.flatnonzero(mark):
            yield int(x) + lo


@dataclass(frozen=True)
class Scenario:
    f: PolyQ
    a: Fraction
    prime_bound: int
    mode: str  # "depth" or "exact"
    depth: Optional[int] = None
    exclusions: Optional[frozenset] = None  # None selects the default exclusions
    max_degree: int = DEFAULT_CENSUS_MAX_DEGREE

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        if self.f.degree < 2:
            raise ValueError("census needs deg f >= 2")
        if self.mode == "exact":
            if unicritical_shape(self.f) is None:
                raise ValueError("ExactUnicritical mode needs f = u X^d + v")
        elif self.mode == "depth":
            if not self.depth or self.depth < 1:
                raise ValueError("DepthBounded mode needs depth >= 1")
            if self.f.degree**self.depth > self.max_degree:
                raise DegreeCapExceeded(
                    f"depth {self.depth} reaches degree {self.f.degree ** self.depth} > {self.max_degree}"
                )
        else:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.exclusions is not None:
            object.__setattr__(self, "exclusions", frozenset(self.exclusions))

    @property
    def mode_label(self):
        return f"DepthBounded({self.depth})" if self.mode == "depth" else "ExactUnicritical"

    def to_json(self):
        return {
            "f": str(self.f),
            "a": format_rational(self.a),
            "pmax": self.prime_bound,
            "mode": self.mode_label,
        }

    @classmethod
    def from_dict(cls, d):
        mode = d.get("mode", "exact" if d.get("exact_unicritical") else "depth")
        if mode in ("ExactUnicritical", "exact_unicritical"):
            mode = "exact"
        if mode == "DepthBounded":
            mode = "depth"
        excl = d.get("exclusions")
        return cls(
            parse_poly(d["f"]),
            parse_rational(str(d.get("a", 0))),
            int(d["pmax"]),
            mode,
            int(d["depth"]) if d.get("depth") is not None else None,
            None if excl is None else frozenset(int(p) for p in excl),
            int(d.get("max_degree", DEFAULT_CENSUS_MAX_DEGREE)),
        )


def _undefined_at(scn, p):
    dens = [c.denominator for c in scn.f.coeffs] + [scn.a.denominator]
    return any(dd % p == 0 for dd in dens)


def evaluate_prime(scn, p):
    """One CSV row: (prime, verdict, fail_level, orbit_period)."""
    if scn.mode == "exact":
        u, d, v = unicritical_shape(scn.f)
        res = unicritical_exact_stable(u, d, v, scn.a, p)
    else:
        res = depth_stable(scn.f, scn.a, p, scn.depth, max_degree=scn.max_degree)
    period = res.orbit_period_mod_p
    if res.stable:
        return (p, "stable", None, period)
    verdict = {UNDEFINED: "undefined", DEGREE_DROP: "degree_drop"}.get(res.reason, "unstable")
    return (p, verdict, res.level, period)


def _run_chunk(args):
    scn, primes = args
    return [evaluate_prime(scn, p) for p in primes]


def wilson_interval(k, n, z=Z95):
    if n == 0:
        return 0.0, 1.0
    ph = k / n
    den = 1 + z * z / n
    center = (ph + z * z / (2 * n)) / den
    half = z / den * math.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n))
    lo = 0.0 if k == 0 else max(0.0, center - half)
    hi = 1.0 if k == n else min(1.0, center + half)
    return lo, hi


@dataclass
class CensusReport:
    scenario: Scenario
    primes_tested: int
    stable_count: int
    histogram: dict
    excluded: tuple
    rows: tuple = field(repr=False, default=())
    expected: Optional[Fraction] = None
    tol: Optional[Fraction] = None
    verdict: Optional[str] = None

    @property
    def density(self):
        return Fraction(self.stable_count, self.primes_tested) if self.primes_tested else Fraction(0)

    @property
    def wilson_95(self):
        return wilson_interval(self.stable_count, self.primes_tested)

    def with_expectation(self, expected, tol):
        self.expected = as_rational(expected)
        self.tol = as_rational(tol)
        self.verdict = compare_predicted(self, self.expected, self.tol)
        return self

    def to_json(self):
        lo, hi = self.wilson_95
        out = {
            "scenario": self.scenario.to_json(),
            "primes_tested": self.primes_tested,
            "stable_count": self.stable_count,
            "density_num": self.density.numerator,
            "density_den": self.density.denominator,
            "density": float(self.density),
            "wilson_lo": lo,
            "wilson_hi": hi,
            "histogram": dict(self.histogram),
            "excluded": list(self.excluded),
        }
        if self.expected is not None:
            out["expected"] = format_rational(self.expected)
            out["tol"] = format_rational(self.tol)
            out["verdict"] = self.verdict
        return out

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_COLUMNS)
            for p, verdict, level, period in self.rows:
                w.writerow([p, verdict, "" if level is None else level, "" if period is None else period])

    def write_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2)


def _chunks(seq, size):
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def run_census(scn, workers=1, chunk=CHUNK):
    """Evaluate the scenario's engine on every non-excluded prime up to its bound."""
    primes = list(prime_stream(scn.prime_bound))
    if scn.exclusions is None:
        data = GoodPrimeData(scn.f)
        excluded = [p for p in primes if not data.is_good(p) or _undefined_at(scn, p)]
    else:
        excluded = [p for p in primes if p in scn.exclusions]
    skip = set(excluded)
    todo = [p for p in primes if p not in skip]
    jobs = [(scn, c) for c in _chunks(todo, chunk)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(j) for j in jobs]
    rows = tuple(r for part in parts for r in part)
    hist = {}
    stable = 0
    for _, verdict, level, _ in rows:
        if verdict == "stable":
            stable += 1
            continue
        key = str(level) if verdict == "unstable" else verdict
        hist[key] = hist.get(key, 0) + 1
    hist = dict(sorted(hist.items(), key=lambda kv: (not kv[0].isdigit(), int(kv[0]) if kv[0].isdigit() else 0, kv[0])))
    return CensusReport(scn, len(rows), stable, hist, tuple(excluded), rows)


def compare_predicted(r, predicted, tol):
    """Pass iff |density - predicted| <= tol (exact arithmetic where possible)."""
    density = r.density if isinstance(r, CensusReport) else r
    if isinstance(density, float):
        return "Pass" if abs(density - float(as_rational(predicted))) <= float(as_rational(tol)) else "Fail"
    return "Pass" if abs(as_rational(density) - as_rational(predicted)) <= as_rational(tol) else "Fail"


def decay_from_report(r):
    """Depth-N stable densities for N = 1..depth, from one depth run."""
    depth = r.scenario.depth
    out = []
    for n in range(1, depth + 1):
        ok = sum(1 for _, v, lvl, _ in r.rows if v == "stable" or (v == "unstable" and lvl > n))
        out.append(Fraction(ok, r.primes_tested) if r.primes_tested else Fraction(0))
    return out


def density_decay_profile(f, a, prime_bound, n_max, workers=1):
    scn = Scenario(f, a, prime_bound, "depth", n_max)
    return decay_from_report(run_census(scn, workers))


def run_batch(path, workers=1):
    """Run every scenario object in a JSON array file, in order."""
    with open(path) as fh:
        items = json.load(fh)
    if not isinstance(items, list):
        raise ValueError("batch file must hold a JSON array of scenarios")
    out = []
    for d in items:
        r = run_census(Scenario.from_dict(d), int(d.get("workers", workers)))
        if d.get("expect") is not None:
            r.with_expectation(parse_rational(str(d["expect"])), parse_rational(str(d.get("tol", "0.015"))))
        out.append(r)
    return out
