"""Exact rational polynomial machinery."""

from .multipoly import VARS, MultiPoly, divexact, gcd as multipoly_gcd, symbols
from .parse import parse_expr, parse_poly
from .poly import Coef, LaurentPoly, NotAPerfectSquare, Poly, divrem, format_poly, poly_sqrt
from .polyfrac import PolyFrac
from .roots import (
    count_roots,
    real_root_census,
    refine_root,
    squarefree_decomposition,
    squarefree_part,
    sturm_chain,
    sturm_isolate,
)

__all__ = [
    "VARS",
    "Coef",
    "LaurentPoly",
    "MultiPoly",
    "NotAPerfectSquare",
    "Poly",
    "PolyFrac",
    "count_roots",
    "divexact",
    "divrem",
    "format_poly",
    "multipoly_gcd",
    "parse_expr",
    "parse_poly",
    "poly_sqrt",
    "real_root_census",
    "refine_root",
    "squarefree_decomposition",
    "squarefree_part",
    "sturm_chain",
    "sturm_isolate",
    "symbols",
]
