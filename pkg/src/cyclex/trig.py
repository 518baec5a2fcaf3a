"""Planar systems ``x' = P + x R, y' = Q + y R`` and their polar form.

On the unit circle a homogeneous form of degree ``m`` becomes a finite
Fourier series ``sum c_k e^{ik theta}`` with ``|k| <= m`` and ``k = m mod 2``.
Coefficients are kept exact in the Gaussian rationals Q(i).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import numpy as np

from .algebra import BiPoly, QuadExt, X, Y, sturm_has_real_root
from .algebra.sturm import isolate_real_roots
from .algebra.quadext import as_fraction

__all__ = [
    "VectorField",
    "SystemSpec",
    "TrigPoly",
    "PolarForm",
    "restrict_to_circle",
    "to_polar",
    "g_nonvanishing",
    "fourier_to_homogeneous",
    "rotation_family",
    "vanishing_directions",
    "homogeneous_nonvanishing",
    "series_nonvanishing",
]


def gauss(a=0, b=0) -> QuadExt:
    return QuadExt(a, b, -1)


@dataclass(frozen=True)
class VectorField:
    """A polynomial vector field ``(X, Y)`` in the plane."""

    X: BiPoly
    Y: BiPoly

    @property
    def degree(self) -> int:
        return max(self.X.degree, self.Y.degree)

    def divergence(self) -> BiPoly:
        return self.X.dx() + self.Y.dy()

    def lie_derivative(self, F: BiPoly) -> BiPoly:
        """``F_x X + F_y Y``."""
        return F.dx() * self.X + F.dy() * self.Y

    def parity(self) -> int | None:
        """``s`` with ``(X, Y)(-x, -y) = (-1)**s (X, Y)``, or None."""
        degs = self.X.degrees() | self.Y.degrees()
        pars = {d % 2 for d in degs}
        if len(pars) != 1:
            return None if pars else 0
        return pars.pop()

    def __call__(self, x, y):
        return self.X.evaluate_float(x, y), self.Y.evaluate_float(x, y)


@dataclass(frozen=True)
class SystemSpec:
    """``x' = P_n + x R_m``, ``y' = Q_n + y R_m`` with homogeneous parts, n <= m."""

    n: int
    m: int
    P: BiPoly
    Q: BiPoly
    R: BiPoly

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.m < self.n:
            raise ValueError(f"need n <= m, got n={self.n}, m={self.m}")
        for name, poly, deg in (("P", self.P, self.n), ("Q", self.Q, self.n), ("R", self.R, self.m)):
            if not poly.is_homogeneous(deg):
                raise ValueError(f"{name} is not homogeneous of degree {deg}: {poly}")

    @classmethod
    def from_triples(cls, n, m, P, Q, R) -> SystemSpec:
        return cls(n, m, BiPoly.from_triples(P), BiPoly.from_triples(Q), BiPoly.from_triples(R))

    @property
    def X(self) -> BiPoly:
        return self.P + X * self.R

    @property
    def Y(self) -> BiPoly:
        return self.Q + Y * self.R

    @property
    def field(self) -> VectorField:
        return VectorField(self.X, self.Y)

    @property
    def degree(self) -> int:
        return self.field.degree

    @property
    def bernoulli_exponent(self) -> int:
        """The power ``n - m - 1`` with ``rho = r**(n - m - 1)``."""
        return self.n - self.m - 1

    def angular_form(self) -> BiPoly:
        """``x Q - y P``; its restriction to the circle is g."""
        return X * self.Q - Y * self.P

    def radial_form(self) -> BiPoly:
        """``x P + y Q``; its restriction to the circle is f."""
        return X * self.P + Y * self.Q


class TrigPoly:
    """Finite Fourier series with Gaussian-rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        out = {}
        for k, c in (coeffs or {}).items():
            c = c if isinstance(c, QuadExt) else gauss(as_fraction(c))
            if c.d != -1:
                raise ValueError("Fourier coefficients live in Q(i)")
            if c:
                out[int(k)] = c
        self.coeffs: dict[int, QuadExt] = out

    @classmethod
    def constant(cls, c) -> TrigPoly:
        return cls({0: c})

    @classmethod
    def cos(cls) -> TrigPoly:
        return cls({1: Fraction(1, 2), -1: Fraction(1, 2)})

    @classmethod
    def sin(cls) -> TrigPoly:
        # sin = (e^{it} - e^{-it}) / (2i)
        return cls({1: gauss(0, Fraction(-1, 2)), -1: gauss(0, Fraction(1, 2))})

    @property
    def degree(self) -> int:
        return max((abs(k) for k in self.coeffs), default=-1)

    def coeff(self, k: int) -> QuadExt:
        return self.coeffs.get(k, gauss())

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            other = TrigPoly.constant(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return TrigPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TrigPoly):
            return TrigPoly({k: c * other for k, c in self.coeffs.items()})
        out: dict[int, QuadExt] = {}
        for k1, a in self.coeffs.items():
            for k2, b in other.coeffs.items():
                k = k1 + k2
                out[k] = out[k] + a * b if k in out else a * b
        return TrigPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            other = TrigPoly.constant(other)
        return not (self - other).coeffs

    def __pow__(self, k: int):
        out = TrigPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def is_real(self) -> bool:
        return all(self.coeff(-k) == c.conjugate() for k, c in self.coeffs.items())

    def has_parity(self, deg: int) -> bool:
        return all((k - deg) % 2 == 0 for k in self.coeffs)

    def mean(self) -> QuadExt:
        return self.coeff(0)

    def derivative(self) -> TrigPoly:
        return TrigPoly({k: c * gauss(0, k) for k, c in self.coeffs.items()})

    def cos_sin(self) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
        """Real form ``sum a_k cos k t + b_k sin k t`` of a real series."""
        if not self.is_real():
            raise ValueError("series is not real")
        a, b = {}, {}
        for k, c in self.coeffs.items():
            if k == 0:
                a[0] = c.a
            elif k > 0:
                a[k], b[k] = 2 * c.a, -2 * c.b
        return a, b

    def __call__(self, theta):
        """Floating-point value of the real part; accepts numpy arrays."""
        theta = np.asarray(theta, dtype=float)
        acc = np.zeros_like(theta)
        for k, c in self.coeffs.items():
            acc = acc + float(c.a) * np.cos(k * theta) - float(c.b) * np.sin(k * theta)
        return acc

    def __repr__(self):
        return f"TrigPoly({ {k: str(c) for k, c in sorted(self.coeffs.items())} })"

    def __str__(self):
        if not self.is_real():
            return repr(self)
        a, b = self.cos_sin()
        parts = []
        for k in sorted(set(a) | set(b)):
            if a.get(k):
                parts.append(f"{a[k]}" if k == 0 else f"{a[k]}*cos({k}t)")
            if b.get(k):
                parts.append(f"{b[k]}*sin({k}t)")
        return " + ".join(parts).replace("+ -", "- ") or "0"


@lru_cache(maxsize=None)
def _circle_monomial(i: int, j: int) -> TrigPoly:
    return TrigPoly.cos() ** i * TrigPoly.sin() ** j


def restrict_to_circle(p: BiPoly) -> TrigPoly:
    """``p(cos t, sin t)`` as a Fourier series."""
    out = TrigPoly()
    for (i, j), c in p.terms.items():
        out = out + _circle_monomial(i, j) * c
    return out


@dataclass(frozen=True)
class PolarForm:
    """``r' = f r**n + h r**(m+1)``, ``theta' = g r**(n-1)``."""

    f: TrigPoly
    g: TrigPoly
    h: TrigPoly
    n: int
    m: int

    @property
    def bernoulli_exponent(self) -> int:
        return self.n - self.m - 1


def to_polar(s: SystemSpec) -> PolarForm:
    return PolarForm(
        f=restrict_to_circle(s.radial_form()),
        g=restrict_to_circle(s.angular_form()),
        h=restrict_to_circle(s.R),
        n=s.n,
        m=s.m,
    )


def g_nonvanishing(s: SystemSpec) -> bool:
    """True iff g(theta) has no real zero, decided exactly.

    g vanishes at some angle iff ``x Q - y P`` has a real linear factor:
    either ``x`` itself or a real root of the dehomogenisation at y = 1.
    """
    return homogeneous_nonvanishing(s.angular_form())


def vanishing_directions(s: SystemSpec) -> list[float]:
    """Angles in [0, pi) where g vanishes (invariant lines through the origin)."""
    G = s.angular_form()
    if not G:
        raise ValueError("g vanishes identically")
    angles = []
    if G.coeff(G.degree, 0) == 0:
        angles.append(0.0)
    for lo, hi in isolate_real_roots(G.dehomogenize()):
        t = float((lo + hi) / 2)
        # x = t * y, direction (t, 1)
        angles.append(float(np.arctan2(1.0, t)))
    return sorted(angles)


def fourier_to_homogeneous(t: TrigPoly, m: int) -> BiPoly:
    """The unique homogeneous form of degree ``m`` whose circle restriction is ``t``.

    Solves the square linear system between the ``m + 1`` monomials
    ``x**i y**(m - i)`` and the frequencies ``-m, -m + 2, ..., m`` exactly
    over Q(i).
    """
    if m < 0:
        raise ValueError("degree must be non-negative")
    if t.degree > m or not t.has_parity(m):
        raise ValueError(f"series of degree {t.degree} does not match degree-{m} parity")
    freqs = list(range(-m, m + 1, 2))
    mons = [(i, m - i) for i in range(m + 1)]
    cols = [_circle_monomial(i, j) for i, j in mons]
    # rows: frequencies; columns: monomials; last column: target
    rows = [[col.coeff(k) for col in cols] + [t.coeff(k)] for k in freqs]
    size = m + 1
    for c in range(size):
        pr = next(r for r in range(c, size) if rows[r][c])
        rows[c], rows[pr] = rows[pr], rows[c]
        piv = rows[c][c]
        rows[c] = [v / piv for v in rows[c]]
        for r in range(size):
            if r != c and rows[r][c]:
                fac = rows[r][c]
                rows[r] = [a - fac * b for a, b in zip(rows[r], rows[c])]
    sol = [rows[r][size] for r in range(size)]
    out = {}
    for (i, j), c in zip(mons, sol):
        if c.b:
            raise ValueError("series is not real; homogeneous form would be complex")
        out[(i, j)] = c.a
    return BiPoly(out)


def rotation_family(a, R: BiPoly, m: int | None = None) -> SystemSpec:
    """``x' = -y + x (a + R)``, ``y' = x + y (a + R)`` with R homogeneous."""
    a = as_fraction(a)
    m = R.degree if m is None else m
    return SystemSpec(1, m, a * X - Y, X + a * Y, R)


def homogeneous_nonvanishing(G: BiPoly) -> bool:
    """True iff the homogeneous form ``G`` has no zero on the unit circle."""
    if not G:
        return False
    # G(1, 0) = 0 is the direction y = 0, invisible after setting y = 1.
    if G.coeff(G.degree, 0) == 0:
        return False
    return not sturm_has_real_root(G.dehomogenize())


def series_nonvanishing(t: TrigPoly, deg: int) -> bool:
    """Exact nonvanishing test for a real series of degree-``deg`` parity."""
    return homogeneous_nonvanishing(fourier_to_homogeneous(t, deg))
