"""Concrete systems used throughout the package and its tests."""

from __future__ import annotations

from fractions import Fraction

from .algebra import BiPoly, X, Y
from .algebra.quadext import as_fraction
from .trig import SystemSpec, VectorField, rotation_family

__all__ = [
    "nonalgebraic_quintic",
    "algebraic_quintic",
    "rotation_family",
    "filiptsov_field",
    "filiptsov_curve",
]

_P3 = -(X - Y) * (X**2 - X * Y + Y**2)
_Q3 = -(X + Y) * (2 * X**2 - X * Y + 2 * Y**2)


def nonalgebraic_quintic() -> SystemSpec:
    """Cubic rotation plus ``(x, y) * (2x^4 + 2x^2y^2 + y^4)``.

    Its unique limit cycle is hyperbolic and not algebraic.
    """
    return SystemSpec(3, 4, _P3, _Q3, 2 * X**4 + 2 * X**2 * Y**2 + Y**4)


def algebraic_quintic() -> SystemSpec:
    """Same cubic part with ``R = x^4 + 3x^2y^2 + 2y^4``; the cycle is the unit circle."""
    return SystemSpec(3, 4, _P3, _Q3, X**4 + 3 * X**2 * Y**2 + 2 * Y**4)


def filiptsov_field(a) -> VectorField:
    """Quadratic system with an algebraic limit cycle for ``0 < a < 3/13``."""
    a = as_fraction(a)
    Xf = 6 * (1 + a) * X + 2 * Y - 6 * (2 + a) * X**2 + 12 * X * Y
    Yf = 15 * (1 + a) * Y + 3 * a * (1 + a) * X**2 - 2 * (9 + 5 * a) * X * Y + 16 * Y**2
    return VectorField(Xf, Yf)


def filiptsov_curve(a) -> BiPoly:
    """The invariant quartic ``3(1+a)(a x^2 + y)^2 + 2 y^2 (2y - 3(1+a) x)``."""
    a = as_fraction(a)
    return 3 * (1 + a) * (a * X**2 + Y) ** 2 + 2 * Y**2 * (2 * Y - 3 * (1 + a) * X)


FILIPTSOV_A = Fraction(1, 6)
