"""Stable primes for polynomial iteration over the rationals."""

from arbordyn.census import (
    CensusReport,
    Scenario,
    compare_predicted,
    density_decay_profile,
    prime_stream,
    run_census,
)
from arbordyn.dickson import maximal_density_candidates, represent_c
from arbordyn.dynamics import (
    check_hypotheses,
    classify_pcf,
    critical_structure,
    escape_bound,
    linear_shift,
    orbit_classify,
)
from arbordyn.exactalg import PolyQ, parse_poly, parse_rational
from arbordyn.stability import (
    depth_stable,
    find_valuation_witnesses,
    good_prime,
    kernel_witness_scan,
    predict_ramification,
    unicritical_exact_stable,
)

__version__ = "0.1.0"

__all__ = [
    "CensusReport", "PolyQ", "Scenario", "check_hypotheses", "classify_pcf",
    "compare_predicted", "critical_structure", "density_decay_profile", "depth_stable",
    "escape_bound", "find_valuation_witnesses", "good_prime", "kernel_witness_scan",
    "linear_shift", "maximal_density_candidates", "orbit_classify", "parse_poly",
    "parse_rational", "predict_ramification", "prime_stream", "represent_c", "run_census",
    "unicritical_exact_stable",
]
