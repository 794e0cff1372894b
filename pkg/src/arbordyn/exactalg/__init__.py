"""Exact arithmetic over Q and F_p."""

from arbordyn.exactalg.factor import q_factor, rational_roots
from arbordyn.exactalg.parse import parse_poly, parse_rational
from arbordyn.exactalg.polyfp import (
    FactorShape,
    PolyFp,
    fp_factor_shape,
    fp_irreducible,
    fp_roots,
    reduce_mod_p,
)
from arbordyn.exactalg.polyq import (
    PolyQ,
    discriminant,
    discriminant_in_t,
    poly_compose,
    poly_gcd,
    poly_iterate,
    resultant,
    squarefree_decomposition,
    squarefree_part,
)
from arbordyn.exactalg.rational import as_rational, naive_height, valuation

__all__ = [
    "FactorShape", "PolyFp", "PolyQ", "as_rational", "discriminant", "discriminant_in_t",
    "fp_factor_shape", "fp_irreducible", "fp_roots", "naive_height", "parse_poly",
    "parse_rational", "poly_compose", "poly_gcd", "poly_iterate", "q_factor",
    "rational_roots", "reduce_mod_p", "resultant", "squarefree_decomposition",
    "squarefree_part", "valuation",
]
