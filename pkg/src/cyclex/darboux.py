"""Invariant algebraic curves and their cofactors.

A polynomial F is an algebraic solution of ``(X, Y)`` when
``F_x X + F_y Y = K F`` for a polynomial cofactor K.  Everything here is
exact: cofactors are obtained by polynomial division and every returned
curve has a vanishing residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import BiPoly, NotDivisible, QuadExt, X, Y
from .algebra.quadext import as_fraction
from .algebra.sturm import sturm_has_real_root
from .errors import DegenerateCurve, NotInvariant, ParityMismatch, ResonantDenominator
from .systems import filiptsov_curve, filiptsov_field
from .trig import (
    SystemSpec,
    TrigPoly,
    VectorField,
    fourier_to_homogeneous,
    restrict_to_circle,
    rotation_family,
)

__all__ = [
    "InvariantCurve",
    "cofactor_of",
    "origin_lines_curve",
    "check_top_cofactor",
    "symmetry_partner",
    "divergence_identity",
    "RotationFamilyCurves",
    "rotation_family_curves",
    "filiptsov_check",
]


def _field(system) -> VectorField:
    if isinstance(system, VectorField):
        return system
    if isinstance(system, SystemSpec):
        return system.field
    Xp, Yp = system
    return VectorField(Xp, Yp)


@dataclass(frozen=True)
class InvariantCurve:
    F: BiPoly
    K: BiPoly

    @property
    def degree(self) -> int:
        return self.F.degree

    def residual(self, system) -> BiPoly:
        return _field(system).lie_derivative(self.F) - self.K * self.F

    def is_real(self) -> bool:
        return self.F.is_rational()


def cofactor_of(F: BiPoly, system) -> InvariantCurve:
    """Cofactor of ``F`` by exact division; raises :class:`NotInvariant`."""
    if not F:
        raise ValueError("F must be nonzero")
    lhs = _field(system).lie_derivative(F)
    try:
        K = lhs.exact_divide(F)
    except NotDivisible as exc:
        raise NotInvariant(F, exc.remainder) from None
    return InvariantCurve(F, K)


def origin_lines_curve(s: SystemSpec) -> InvariantCurve:
    """``y P - x Q`` with cofactor ``(n + 1) R + div(P, Q)``.

    The curve is a product of (real or complex) lines through the origin.
    The closed-form cofactor is checked against exact division.
    """
    F = Y * s.P - X * s.Q
    if not F:
        raise DegenerateCurve("y P - x Q vanishes identically")
    K = (s.n + 1) * s.R + s.P.dx() + s.Q.dy()
    found = cofactor_of(F, s)
    if found.K != K:
        raise AssertionError(f"cofactor mismatch: {found.K} != {K}")  # pragma: no cover
    return found


def check_top_cofactor(c: InvariantCurve, s: SystemSpec) -> bool:
    """Whether the degree-m part of the cofactor equals ``deg(F) * R``."""
    if c.residual(s):
        raise NotInvariant(c.F, c.residual(s))
    return c.K.homogeneous_part(s.m) == c.degree * s.R


def _realify(c: InvariantCurve) -> InvariantCurve:
    F = (c.F * c.F.conjugate()).to_rational()
    K = (c.K + c.K.conjugate()).to_rational()
    return InvariantCurve(F, K)


def symmetry_partner(c: InvariantCurve, system, combine: bool = False) -> InvariantCurve:
    """Partner solution under ``(x, y) -> (-x, -y)`` for a field of definite parity.

    If ``(X, Y)(-x, -y) = (-1)**s (X, Y)``, then ``F(-x, -y)`` is invariant
    with cofactor ``(-1)**(s+1) K(-x, -y)``.  A complex curve is first
    replaced by the real curve ``F * conj(F)``.  With ``combine=True`` the
    product ``F(x, y) F(-x, -y)`` is returned; its cofactor satisfies
    ``K(-x, -y) = (-1)**(s+1) K(x, y)``.
    """
    vf = _field(system)
    s = vf.parity()
    if s is None:
        raise ParityMismatch("vector field has no definite parity under (x, y) -> (-x, -y)")
    if c.residual(vf):
        raise NotInvariant(c.F, c.residual(vf))
    base = c if c.is_real() else _realify(c)
    sign = 1 if (s + 1) % 2 == 0 else -1
    partner = InvariantCurve(base.F.reflect(), sign * base.K.reflect())
    if combine:
        partner = InvariantCurve(base.F * partner.F, base.K + partner.K)
    if partner.residual(vf):  # pragma: no cover - identity of the construction
        raise NotInvariant(partner.F, partner.residual(vf))
    return partner


def divergence_identity(s: SystemSpec, c1: InvariantCurve | None = None, K2: BiPoly | None = None) -> bool:
    """``div(X, Y) == K1 + K2`` with K1 the origin-lines cofactor and
    ``K2 = (m - n + 1) R``.

    This is the exact identity that makes ``1 / (F1 F2)`` an integrating
    factor, where F2 is the (possibly transcendental) cycle function whose
    cofactor is K2.
    """
    c1 = c1 or origin_lines_curve(s)
    K2 = (s.m - s.n + 1) * s.R if K2 is None else K2
    return not (s.field.divergence() - c1.K - K2)


@dataclass(frozen=True)
class RotationFamilyCurves:
    """Algebraic curves of ``x' = -y + x(a + R)``, ``y' = x + y(a + R)``."""

    system: SystemSpec
    circle: InvariantCurve
    curve: InvariantCurve
    G: BiPoly
    R_coeffs: TrigPoly
    circle_sum: Fraction
    real_oval: bool
    limit_cycle: bool

    @property
    def H(self) -> BiPoly:
        return self.curve.F


def _positive_on_circle(G: BiPoly) -> bool:
    if not G or G.degree % 2:
        return False
    if G.coeff(0, G.degree) <= 0:
        return False
    return not sturm_has_real_root(G.dehomogenize())


def rotation_family_curves(a, R: BiPoly, m: int | None = None) -> RotationFamilyCurves:
    """Build ``H = G_m - 1`` from the Fourier coefficients of R and verify it.

    With ``R(cos t, sin t) = sum c_k e^{ikt}``, the form ``G_m`` has
    coefficients ``-m c_k / (k i + m a)`` and H has cofactor ``m R``.
    A real algebraic solution besides the circle exists iff
    ``sum c_k / (k i + m a) < 0``; it carries the limit cycle iff
    additionally G_m > 0 on the circle, which forces m even.
    """
    a = as_fraction(a)
    m = R.degree if m is None else m
    if m < 1:
        raise ValueError("R must have degree at least 1")
    if not R.is_homogeneous(m):
        raise ValueError("R must be homogeneous")
    if a * m == 0:
        raise ResonantDenominator("k i + m a vanishes at k = 0")
    system = rotation_family(a, R, m)
    c = restrict_to_circle(R)
    g_coeffs = {}
    total = QuadExt(0, 0, -1)
    for k, ck in c.coeffs.items():
        den = QuadExt(m * a, k, -1)
        total = total + ck / den
        g_coeffs[k] = -m * ck / den
    G = fourier_to_homogeneous(TrigPoly(g_coeffs), m)
    H = G - 1
    curve = cofactor_of(H, system)
    if curve.K != m * R:
        raise AssertionError(f"unexpected cofactor {curve.K}")  # pragma: no cover
    circle = cofactor_of(X**2 + Y**2, system)
    if not total.is_rational():  # pragma: no cover - conjugate pairs cancel
        raise AssertionError("circle sum must be real")
    total_q = total.a
    real_oval = total_q < 0
    return RotationFamilyCurves(
        system=system,
        circle=circle,
        curve=curve,
        G=G,
        R_coeffs=c,
        circle_sum=total_q,
        real_oval=real_oval,
        limit_cycle=real_oval and m % 2 == 0 and _positive_on_circle(G),
    )


def filiptsov_check(a) -> InvariantCurve:
    """Cofactor of the invariant quartic of the Filiptsov quadratic system."""
    return cofactor_of(filiptsov_curve(a), filiptsov_field(a))
