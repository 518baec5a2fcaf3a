"""Exact arithmetic: rationals, quadratic fields, polynomials, linear forms."""

from fractions import Fraction

from .bipoly import BiPoly, NotDivisible, X, Y
from .linform import LinearSystem, LinForm, SolutionSpace, solve_linear
from .quadext import QuadExt, as_fraction, rational_sqrt
from .sturm import count_real_roots, isolate_real_roots, sturm_has_real_root
from .unipoly import UniPoly

__all__ = [
    "BiPoly",
    "Fraction",
    "LinForm",
    "LinearSystem",
    "NotDivisible",
    "QuadExt",
    "SolutionSpace",
    "UniPoly",
    "X",
    "Y",
    "as_fraction",
    "count_real_roots",
    "isolate_real_roots",
    "poly_arith",
    "exact_divide",
    "rational_sqrt",
    "solve_linear",
    "sturm_has_real_root",
    "substitute_line",
]


def poly_arith(p: BiPoly, q: BiPoly, op: str) -> BiPoly:
    """``op`` is one of ``"add"``, ``"sub"``, ``"mul"``."""
    try:
        return {"add": p.__add__, "sub": p.__sub__, "mul": p.__mul__}[op](q)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None


def exact_divide(p: BiPoly, f: BiPoly) -> BiPoly:
    return p.exact_divide(f)


def substitute_line(p: BiPoly, alpha) -> UniPoly:
    return p.substitute_line(alpha)
