"""Elements of a quadratic number field Q(w) with w**2 = d."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational as _RationalABC

__all__ = ["QuadExt", "rational_sqrt", "as_fraction", "conjugate"]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rational_sqrt(q) -> Fraction | None:
    """Return the non-negative rational square root of ``q`` or None."""
    q = as_fraction(q)
    if q < 0:
        return None
    p, r = q.numerator, q.denominator
    sp, sr = isqrt(p), isqrt(r)
    if sp * sp == p and sr * sr == r:
        return Fraction(sp, sr)
    return None


def conjugate(value):
    """Field conjugate; the identity on rationals."""
    if isinstance(value, QuadExt):
        return value.conjugate()
    return value


class QuadExt:
    """``a + b*w`` with rational ``a, b`` and ``w**2 = d``.

    ``d`` must not be the square of a rational, otherwise the extension is
    trivial and plain :class:`fractions.Fraction` should be used instead.
    Rationals and ints coerce into any field; mixing two different ``d``
    raises ``ValueError``.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=-1):
        d = as_fraction(d)
        if rational_sqrt(d) is not None:
            raise ValueError(f"d={d} is a rational square; Q(sqrt d) = Q")
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        self.d = d

    @classmethod
    def generator(cls, d) -> QuadExt:
        return cls(0, 1, d)

    # coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return None

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in quadratic field")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadExt(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def is_rational(self) -> bool:
        return self.b == 0

    def sqrt(self) -> QuadExt | None:
        """A square root inside the same field, or None if there is none."""
        if self.b == 0:
            r = rational_sqrt(self.a)
            if r is not None:
                return QuadExt(r, 0, self.d)
            r = rational_sqrt(self.a / self.d)
            if r is not None:
                return QuadExt(0, r, self.d)
            return None
        # (u + v w)^2 = u^2 + d v^2 + 2 u v w
        s = rational_sqrt(self.norm())
        if s is None:
            return None
        for u2 in ((self.a + s) / 2, (self.a - s) / 2):
            u = rational_sqrt(u2)
            if u:
                return QuadExt(u, self.b / (2 * u), self.d)
        return None

    def __complex__(self):
        if self.d < 0:
            return complex(float(self.a), float(self.b) * float(-self.d) ** 0.5)
        return complex(float(self.a) + float(self.b) * float(self.d) ** 0.5)

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        w = "i" if self.d == -1 else f"sqrt({self.d})"
        if self.b == 0:
            return str(self.a)
        bpart = w if self.b == 1 else f"-{w}" if self.b == -1 else f"{self.b}*{w}"
        if self.a == 0:
            return bpart
        sign = "-" if self.b < 0 else "+"
        babs = abs(self.b)
        bpart = w if babs == 1 else f"{babs}*{w}"
        return f"({self.a} {sign} {bpart})"
