"""Dense univariate polynomials over Q, Q(w), or linear forms.

Coefficients only need ring operations and truthiness for zero tests;
division requires the divisor's leading coefficient to be invertible
(a rational or a quadratic-field element).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = ["UniPoly", "poly_from_roots"]

_ZERO = Fraction(0)


def _coerce(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> UniPoly:
        return cls([0] * k + [c])

    @classmethod
    def x(cls) -> UniPoly:
        return cls([0, 1])

    # structure --------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def __len__(self):
        return len(self.coeffs)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else _ZERO

    def low_order(self) -> int:
        """Multiplicity of the root at 0 (the x-adic valuation)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise ValueError("valuation of the zero polynomial")

    def is_even(self) -> bool:
        return all(not c for c in self.coeffs[1::2])

    def map(self, fn) -> UniPoly:
        return UniPoly(fn(c) for c in self.coeffs)

    def conjugate(self) -> UniPoly:
        return self.map(lambda c: c.conjugate())

    # arithmetic -------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self), len(o))
        return UniPoly(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly(c * other for c in self.coeffs)
        if not self or not other:
            return UniPoly()
        out = [_ZERO] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    def __rmul__(self, other):
        return UniPoly(other * c for c in self.coeffs)

    def __pow__(self, k: int):
        result = UniPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, scalar):
        return UniPoly(c / scalar for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return not (self - other)

    def __hash__(self):
        return hash(self.coeffs)

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quot = [_ZERO] * (dq + 1)
        lc = other.lc
        for k in range(dq, -1, -1):
            c = rem[k + other.degree]
            if not c:
                continue
            q = c / lc
            quot[k] = q
            for j, b in enumerate(other.coeffs):
                if b:
                    rem[k + j] = rem[k + j] - q * b
        return UniPoly(quot), UniPoly(rem[: other.degree])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> UniPoly:
        return self / self.lc if self else self

    # calculus and evaluation --------------------------------------------
    def derivative(self) -> UniPoly:
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def integral(self) -> UniPoly:
        """Antiderivative vanishing at 0."""
        return UniPoly([_ZERO] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_down(self, k: int) -> UniPoly:
        """Exact division by ``x**k``; the low ``k`` coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise ValueError(f"not divisible by x^{k}")
        return UniPoly(self.coeffs[k:])

    def truncate(self, k: int) -> UniPoly:
        """Remainder modulo ``x**k``."""
        return UniPoly(self.coeffs[:k])

    def even_part_in_square(self) -> UniPoly:
        """For an even polynomial ``S(x) = T(x**2)`` return ``T``."""
        if not self.is_even():
            raise ValueError("polynomial is not even")
        return UniPoly(self.coeffs[::2])

    # gcd-type algorithms (field coefficients) -----------------------------
    def gcd(self, other: UniPoly) -> UniPoly:
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
        """``(g, s, t)`` with ``s*self + t*other = g`` and g monic."""
        r0, r1 = self, other
        s0, s1 = UniPoly([1]), UniPoly()
        t0, t1 = UniPoly(), UniPoly([1])
        while r1:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        lc = r0.lc
        return r0 / lc, s0 / lc, t0 / lc

    def inverse_mod(self, modulus: UniPoly) -> UniPoly:
        g, s, _ = self.xgcd(modulus)
        if g.degree != 0:
            raise ZeroDivisionError("not invertible modulo the given polynomial")
        return s % modulus

    def series_inverse(self, k: int) -> UniPoly:
        """Inverse modulo ``x**k``; requires a nonzero constant term."""
        c0 = self[0]
        if not c0:
            raise ZeroDivisionError("constant term is zero")
        inv0 = 1 / c0
        out = [inv0]
        for n in range(1, k):
            acc = _ZERO
            for j in range(1, min(n, self.degree) + 1):
                acc = acc + self[j] * out[n - j]
            out.append(-acc * inv0)
        return UniPoly(out)

    # display ---------------------------------------------------------
    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"

    def __str__(self):
        return self.format("x")

    def format(self, var: str = "x") -> str:
        if not self:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            s = str(c)
            if " " in s and not (s.startswith("(") and s.endswith(")")):
                s = f"({s})"
            mon = "" if k == 0 else var if k == 1 else f"{var}^{k}"
            if not mon:
                terms.append(s)
            elif c == 1:
                terms.append(mon)
            elif c == -1:
                terms.append(f"-{mon}")
            else:
                terms.append(f"{s}*{mon}")
        return " + ".join(terms).replace("+ -", "- ")


def poly_from_roots(roots: Sequence) -> UniPoly:
    out = UniPoly([1])
    for r in roots:
        out = out * UniPoly([-r, 1])
    return out
