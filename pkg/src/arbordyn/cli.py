"""Command line entry point: ``arbordyn <command> ...``.

Exit codes: 0 success (or census expectation met), 1 census expectation
failed, 2 input error.
"""

import argparse
import csv
import json
import sys

from arbordyn import census, dickson, dynamics, stability
from arbordyn.errors import ArbordynError
from arbordyn.exactalg.parse import parse_poly, parse_rational
from arbordyn.exactalg.rational import format_rational
from arbordyn.wreath import (
    AGL1,
    CycleType,
    Tower,
    full_cycle_proportion,
    ordered_prime_factorizations,
    parity_necessary,
    realizable_in_tower,
)
from arbordyn.exactalg.integers import prime_factors

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _dump(obj):
    print(json.dumps(obj, indent=2))


def cmd_analyze(args):
    f = parse_poly(args.poly)
    rep = dynamics.critical_structure(f, args.steps)
    hyp = dynamics.check_hypotheses(f, args.steps)
    pcf = dynamics.classify_pcf(f, args.steps)
    if args.json:
        _dump({
            "f": str(f),
            "critical_structure": rep.to_json(),
            "pcf": {"verdict": pcf.kind, "witness": pcf.witness},
            "hypotheses": hyp.to_json(),
        })
        return EXIT_OK
    print(f"f = {f}  (degree {f.degree})")
    for a, m, orb in rep.rational_critical_points:
        print(f"  critical point {format_rational(a)}: mult {m}, orbit {orb.status}")
    for g, m in rep.irrational_critical_part:
        print(f"  irrational critical factor {g} (multiplicity {m} in f')")
    for v, ct in rep.critical_values_rational:
        print(f"  critical value {format_rational(v)}: fiber type {ct}")
    print(f"postcritical: {pcf.kind}")
    for e in hyp.entries:
        print(f"  {e.criterion:8s} {e.verdict}")
    return EXIT_OK


def cmd_stability(args):
    f = parse_poly(args.f)
    a = parse_rational(args.a)
    if args.exact_unicritical:
        shape = stability.unicritical_shape(f)
        if shape is None:
            raise ValueError("--exact-unicritical needs f = u x^d + v")
        res = stability.unicritical_exact_stable(*shape, a, args.p)
    else:
        res = stability.depth_stable(f, a, args.p, args.depth, max_degree=args.max_degree)
    out = res.to_json()
    out["verdict"] = str(res)
    _dump(out)
    return EXIT_OK


def cmd_witnesses(args):
    f = parse_poly(args.f)
    t = parse_rational(args.t)
    ws = stability.find_valuation_witnesses(f, t, args.e, n_max=args.nmax, trial_bound=args.trial_bound)
    w = csv.writer(sys.stdout)
    w.writerow(["n", "p", "valuation", "complete_factorization"])
    for x in ws:
        w.writerow([x.n, x.p, x.valuation, str(x.complete_factorization).lower()])
    return EXIT_OK


def _infer_q(tau):
    others = {x for x in tau.parts if x != 1}
    if len(others) != 1:
        return None
    q = others.pop()
    return q if len(prime_factors(q)) == 1 else None


def cmd_wreath(args):
    if args.wreath_cmd == "proportion":
        tower = Tower.parse(args.tower)
        val = full_cycle_proportion(tower)
        _dump({"tower": str(tower), "proportion": format_rational(val), "value": float(val)})
        return EXIT_OK
    tau = CycleType.parse(args.type)
    n = args.n if args.n is not None else tau.degree
    if tau.degree != n:
        raise ValueError(f"type has degree {tau.degree}, --n is {n}")
    if args.tower:
        towers = [Tower.parse(args.tower)]
    else:
        towers = [Tower(tuple(AGL1(p) for p in ps)) for ps in ordered_prime_factorizations(n)]
    out = {"type": str(tau), "n": n, "realizable": False}
    for tw in towers:
        tree = realizable_in_tower(tau, tw)
        if tree is not None:
            out["realizable"] = True
            out["witness"] = {"tower": str(tw), "tree": tree.to_json()}
            break
    q = args.q if args.q is not None else _infer_q(tau)
    out["parity"] = parity_necessary(tau, n, q) if q else "Inapplicable"
    _dump(out)
    return EXIT_OK


def cmd_dickson(args):
    rep = dickson.represent_c(args.c)
    cands = dickson.maximal_density_candidates(args.c, args.count, args.sign)
    f = dickson.dickson_poly(dickson.DicksonParams(args.c, args.sign, rep))
    _dump({
        "c": args.c,
        "representation": {"alpha": rep[0], "beta": rep[1]},
        "f": str(f),
        "candidates": [{"a": format_rational(a), "eligible": ok} for a, ok in cands],
        "eligible": [format_rational(a) for a, ok in cands if ok],
    })
    return EXIT_OK


def _report_line(r):
    lo, hi = r.wilson_95
    s = r.scenario
    line = (f"{s.f} a={format_rational(s.a)} {s.mode_label} p<={s.prime_bound}: "
            f"{r.stable_count}/{r.primes_tested} = {float(r.density):.4f} [{lo:.4f}, {hi:.4f}]")
    if r.verdict:
        line += f" expected {format_rational(r.expected)} +/- {format_rational(r.tol)}: {r.verdict}"
    return line


def cmd_census(args):
    if args.batch:
        reports = census.run_batch(args.batch, args.workers)
    else:
        if args.f is None or args.pmax is None:
            raise ValueError("census needs --f and --pmax (or --batch)")
        if (args.depth is None) == (not args.exact_unicritical):
            raise ValueError("choose exactly one of --depth N and --exact-unicritical")
        scn = census.Scenario(
            parse_poly(args.f), parse_rational(args.a), args.pmax,
            "exact" if args.exact_unicritical else "depth", args.depth,
            max_degree=args.max_degree,
        )
        r = census.run_census(scn, args.workers)
        if args.expect is not None:
            r.with_expectation(parse_rational(args.expect), parse_rational(args.tol))
        reports = [r]
    for r in reports:
        print(_report_line(r), file=sys.stderr)
    if args.out:
        payload = reports[0].to_json() if len(reports) == 1 and not args.batch else [r.to_json() for r in reports]
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
    else:
        _dump(reports[0].to_json() if len(reports) == 1 and not args.batch else [r.to_json() for r in reports])
    if args.csv:
        reports[0].write_csv(args.csv)
    return EXIT_FAIL if any(r.verdict == "Fail" for r in reports) else EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="arbordyn", description="Stable primes of polynomial iteration over Q.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("analyze", help="critical orbits and density-zero criteria")
    p.add_argument("poly")
    p.add_argument("--steps", type=int, default=dynamics.DEFAULT_STEPS)
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("stability", help="single-prime stability verdict")
    p.add_argument("--f", required=True)
    p.add_argument("--a", default="0")
    p.add_argument("--p", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--depth", type=int)
    g.add_argument("--exact-unicritical", action="store_true")
    p.add_argument("--max-degree", type=int, default=stability.DEFAULT_MAX_DEGREE)
    p.set_defaults(run=cmd_stability)

    p = sub.add_parser("witnesses", help="primes with valuation not divisible by e")
    p.add_argument("--f", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--trial-bound", type=int, default=10**6)
    p.set_defaults(run=cmd_witnesses)

    p = sub.add_parser("wreath", help="cycle types in iterated wreath products")
    wsub = p.add_subparsers(dest="wreath_cmd", required=True)
    r = wsub.add_parser("realizable")
    r.add_argument("--type", required=True, help="e.g. 3,3,1x43")
    r.add_argument("--n", type=int)
    r.add_argument("--tower", help="e.g. agl7,agl7; default: every AGL1 tower of degree n")
    r.add_argument("--q", type=int)
    r.set_defaults(run=cmd_wreath)
    r = wsub.add_parser("proportion")
    r.add_argument("--tower", required=True)
    r.set_defaults(run=cmd_wreath)

    p = sub.add_parser("dickson", help="maximal-density values for Dickson cubics")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--sign", type=int, default=1, choices=(1, -1))
    p.set_defaults(run=cmd_dickson)

    p = sub.add_parser("census", help="stable-prime density over all primes up to a bound")
    p.add_argument("--f")
    p.add_argument("--a", default="0")
    p.add_argument("--pmax", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--exact-unicritical", action="store_true")
    p.add_argument("--expect")
    p.add_argument("--tol", default="3/200")
    p.add_argument("--out")
    p.add_argument("--csv")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-degree", type=int, default=census.DEFAULT_CENSUS_MAX_DEGREE)
    p.add_argument("--batch", help="JSON array of scenario objects")
    p.set_defaults(run=cmd_census)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.run(args)
    except (ArbordynError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
