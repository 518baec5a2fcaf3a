"""Sparse bivariate polynomials ``sum c[i, j] x**i y**j``."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .unipoly import UniPoly

__all__ = ["BiPoly", "NotDivisible", "X", "Y"]

_ZERO = Fraction(0)


class NotDivisible(ArithmeticError):
    """Exact division left a nonzero remainder."""

    def __init__(self, remainder: BiPoly):
        super().__init__(f"nonzero remainder {remainder}")
        self.remainder = remainder


def _coerce(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    return c


def _grlex(mon: tuple[int, int]) -> tuple[int, int]:
    return (mon[0] + mon[1], mon[0])


class BiPoly:
    """Bivariate polynomial with exact coefficients.

    Coefficients default to :class:`fractions.Fraction` but may be any
    exact ring element with truthiness as zero test (``QuadExt`` for
    complex curves, ``LinForm`` for cofactor templates).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], object] = {}
        for key, c in items:
            i, j = key
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in {key}")
            c = _coerce(c)
            acc[(i, j)] = acc[(i, j)] + c if (i, j) in acc else c
        self.terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def const(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> BiPoly:
        return cls({(i, j): c})

    @classmethod
    def from_triples(cls, triples: Iterable) -> BiPoly:
        return cls(((int(i), int(j)), _coerce(c)) for i, j, c in triples)

    # structure --------------------------------------------------------
    @property
    def degree(self) -> int:
        """Total degree, -1 for the zero polynomial."""
        return max((i + j for i, j in self.terms), default=-1)

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), _ZERO)

    def is_homogeneous(self, deg: int | None = None) -> bool:
        degs = {i + j for i, j in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (deg is None or deg in degs)

    def homogeneous_part(self, k: int) -> BiPoly:
        return BiPoly({m: c for m, c in self.terms.items() if sum(m) == k})

    def degrees(self) -> set[int]:
        return {i + j for i, j in self.terms}

    def map(self, fn) -> BiPoly:
        return BiPoly({m: fn(c) for m, c in self.terms.items()})

    def conjugate(self) -> BiPoly:
        return self.map(lambda c: c.conjugate())

    def reflect(self) -> BiPoly:
        """``p(-x, -y)``."""
        return BiPoly({(i, j): (c if (i + j) % 2 == 0 else -c) for (i, j), c in self.terms.items()})

    def leading(self) -> tuple[tuple[int, int], object]:
        mon = max(self.terms, key=_grlex)
        return mon, self.terms[mon]

    # arithmetic -------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, BiPoly):
            return other
        return BiPoly.const(other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out[m] + c if m in out else c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return BiPoly({m: c * other for m, c in self.terms.items()})
        out: dict[tuple[int, int], object] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                m = (i1 + i2, j1 + j2)
                out[m] = out[m] + a * b if m in out else a * b
        return BiPoly(out)

    def __rmul__(self, other):
        return BiPoly({m: other * c for m, c in self.terms.items()})

    def __pow__(self, k: int):
        result = BiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, scalar):
        return BiPoly({m: c / scalar for m, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        return not (self - other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def divmod(self, f: BiPoly) -> tuple[BiPoly, BiPoly]:
        """Division with remainder by one polynomial, graded-lex order."""
        if not f:
            raise ZeroDivisionError("division by the zero polynomial")
        (fi, fj), fc = f.leading()
        p = dict(self.terms)
        quot: dict[tuple[int, int], object] = {}
        rem: dict[tuple[int, int], object] = {}
        while p:
            mon = max(p, key=_grlex)
            c = p[mon]
            i, j = mon
            if i >= fi and j >= fj:
                qm, qc = (i - fi, j - fj), c / fc
                quot[qm] = qc
                for (a, b), fv in f.terms.items():
                    m = (a + qm[0], b + qm[1])
                    v = (p[m] if m in p else _ZERO) - qc * fv
                    if v:
                        p[m] = v
                    else:
                        p.pop(m, None)
            else:
                rem[mon] = c
                del p[mon]
        return BiPoly(quot), BiPoly(rem)

    def exact_divide(self, f: BiPoly) -> BiPoly:
        q, r = self.divmod(f)
        if r:
            raise NotDivisible(r)
        return q

    # calculus ---------------------------------------------------------
    def dx(self) -> BiPoly:
        return BiPoly({(i - 1, j): i * c for (i, j), c in self.terms.items() if i})

    def dy(self) -> BiPoly:
        return BiPoly({(i, j - 1): j * c for (i, j), c in self.terms.items() if j})

    # evaluation and restriction -----------------------------------------
    def __call__(self, x, y):
        acc = _ZERO
        for (i, j), c in self.terms.items():
            acc = acc + c * x**i * y**j
        return acc

    def evaluate_float(self, x, y):
        """Floating evaluation; accepts numpy arrays."""
        acc = 0.0
        for (i, j), c in self.terms.items():
            acc = acc + float(c) * x**i * y**j
        return acc

    def line_expansion(self, alpha, k: int = 0) -> UniPoly:
        """Coefficient of ``z**k`` in ``p(x, z + alpha*x)`` as a polynomial in x."""
        out: dict[int, object] = {}
        for (i, j), c in self.terms.items():
            if j < k:
                continue
            term = c * comb(j, k) * alpha ** (j - k) if j > k else c
            e = i + j - k
            out[e] = out[e] + term if e in out else term
        if not out:
            return UniPoly()
        return UniPoly(out.get(e, _ZERO) for e in range(max(out) + 1))

    def substitute_line(self, alpha) -> UniPoly:
        """``p(x, alpha*x)`` collected in x."""
        return self.line_expansion(alpha, 0)

    def dehomogenize(self) -> UniPoly:
        """``p(t, 1)`` for a homogeneous ``p``, as a polynomial in t."""
        if not self.is_homogeneous():
            raise ValueError("dehomogenize expects a homogeneous polynomial")
        if not self:
            return UniPoly()
        return UniPoly(self.coeff(i, self.degree - i) for i in range(self.degree + 1))

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) or getattr(c, "b", 1) == 0 for c in self.terms.values())

    def to_rational(self) -> BiPoly:
        """Drop a vanishing quadratic-field component; fails if it does not vanish."""

        def rat(c):
            if isinstance(c, Fraction):
                return c
            if getattr(c, "b", None) == 0:
                return c.a
            raise ValueError(f"coefficient {c} is not rational")

        return self.map(rat)

    # display ---------------------------------------------------------
    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[(i, j)]
            mon = "*".join(
                s for s in (
                    "" if i == 0 else "x" if i == 1 else f"x^{i}",
                    "" if j == 0 else "y" if j == 1 else f"y^{j}",
                ) if s
            )
            cs = str(c)
            if " " in cs and not (cs.startswith("(") and cs.endswith(")")):
                cs = f"({cs})"
            if not mon:
                parts.append(cs)
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append(f"-{mon}")
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")


X = BiPoly.monomial(1, 0)
Y = BiPoly.monomial(0, 1)
