"""Affine-linear forms in named unknowns, and exact linear solving over Q.

A :class:`LinForm` is ``const + sum(coeff[tag] * tag)`` with coefficients
in Q or in a single quadratic field Q(w).  They flow through polynomial
arithmetic unchanged (multiplication by scalars only), which is how an
unknown cofactor is carried through substitution and integration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .quadext import QuadExt, as_fraction

__all__ = ["LinForm", "LinearSystem", "SolutionSpace", "solve_linear"]


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction, QuadExt))


def _norm_scalar(value):
    if isinstance(value, QuadExt):
        return value if value.b else value.a
    return as_fraction(value)


class LinForm:
    __slots__ = ("const", "coeffs")

    def __init__(self, coeffs: Mapping[str, object] | None = None, const=0):
        self.const = _norm_scalar(const)
        self.coeffs = {t: _norm_scalar(c) for t, c in (coeffs or {}).items() if c}

    @classmethod
    def var(cls, tag: str, coeff=1) -> LinForm:
        return cls({tag: coeff})

    @classmethod
    def constant(cls, value) -> LinForm:
        return cls({}, value)

    @property
    def tags(self) -> set[str]:
        return set(self.coeffs)

    def coeff(self, tag: str):
        return self.coeffs.get(tag, Fraction(0))

    def _lift(self, other):
        if isinstance(other, LinForm):
            return other
        if _is_scalar(other):
            return LinForm({}, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        coeffs = dict(self.coeffs)
        for t, c in o.coeffs.items():
            coeffs[t] = coeffs.get(t, 0) + c
        return LinForm(coeffs, self.const + o.const)

    __radd__ = __add__

    def __neg__(self):
        return LinForm({t: -c for t, c in self.coeffs.items()}, -self.const)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, LinForm):
            if not other.coeffs:
                other = other.const
            elif not self.coeffs:
                return other * self.const
            else:
                raise TypeError("product of two non-constant linear forms is not linear")
        if not _is_scalar(other):
            return NotImplemented
        return LinForm({t: c * other for t, c in self.coeffs.items()}, self.const * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LinForm) and not other.coeffs:
            other = other.const
        if not _is_scalar(other):
            return NotImplemented
        inv = 1 / (other if isinstance(other, QuadExt) else as_fraction(other))
        return self * inv

    def __bool__(self):
        return bool(self.const) or bool(self.coeffs)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return not (self - o)

    def __hash__(self):
        return hash((self.const, frozenset(self.coeffs.items())))

    def conjugate(self) -> LinForm:
        def conj(c):
            return c.conjugate() if isinstance(c, QuadExt) else c

        return LinForm({t: conj(c) for t, c in self.coeffs.items()}, conj(self.const))

    def components(self) -> tuple[LinForm, LinForm]:
        """Split ``L = L_rat + w * L_w`` into two rational forms."""

        def parts(c):
            if isinstance(c, QuadExt):
                return c.a, c.b
            return c, Fraction(0)

        rat, irr = {}, {}
        for t, c in self.coeffs.items():
            rat[t], irr[t] = parts(c)
        c0, c1 = parts(self.const)
        return LinForm(rat, c0), LinForm(irr, c1)

    def is_rational(self) -> bool:
        return not self.components()[1]

    def substitute(self, values: Mapping[str, object]):
        """Replace known unknowns by scalars or other forms."""
        out = LinForm({}, self.const)
        for t, c in self.coeffs.items():
            out = out + (values[t] * c if t in values else LinForm({t: c}))
        return out

    def value(self):
        if self.coeffs:
            raise ValueError(f"form {self} still depends on {sorted(self.coeffs)}")
        return self.const

    def __repr__(self):
        return f"LinForm({self.coeffs!r}, const={self.const!r})"

    def __str__(self):
        parts = []
        for t in sorted(self.coeffs):
            c = self.coeffs[t]
            parts.append(t if c == 1 else f"-{t}" if c == -1 else f"{c}*{t}")
        if self.const or not parts:
            parts.append(str(self.const))
        return " + ".join(parts).replace("+ -", "- ")


@dataclass
class LinearSystem:
    """Equations ``form == 0`` over Q in a declared set of unknowns.

    Forms with coefficients in Q(w) are split into their rational and
    w-components when added, so stored rows are always rational.
    """

    unknowns: tuple[str, ...]
    equations: list[LinForm] = field(default_factory=list)

    def __post_init__(self):
        self.unknowns = tuple(self.unknowns)
        forms, self.equations = list(self.equations), []
        for f in forms:
            self.add(f)

    def add(self, form: LinForm) -> None:
        unknown = form.tags - set(self.unknowns)
        if unknown:
            raise ValueError(f"undeclared unknowns {sorted(unknown)}")
        for part in form.components():
            if part:
                self.equations.append(part)

    def extend(self, forms: Iterable[LinForm]) -> None:
        for f in forms:
            self.add(f)

    def __or__(self, other: LinearSystem) -> LinearSystem:
        unknowns = tuple(dict.fromkeys(self.unknowns + other.unknowns))
        return LinearSystem(unknowns, self.equations + other.equations)

    def matrix(self) -> list[list[Fraction]]:
        """Augmented rows ``[c_1, ..., c_n, const]``."""
        return [[f.coeff(t) for t in self.unknowns] + [f.const] for f in self.equations]

    def rref(self) -> tuple[list[list[Fraction]], list[int]]:
        rows = [r[:] for r in self.matrix()]
        ncols = len(self.unknowns) + 1
        pivots: list[int] = []
        r = 0
        for col in range(ncols):
            pr = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            piv = rows[r][col]
            rows[r] = [v / piv for v in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][col] != 0:
                    fac = rows[i][col]
                    rows[i] = [a - fac * b for a, b in zip(rows[i], rows[r])]
            pivots.append(col)
            r += 1
            if r == len(rows):
                break
        return rows[:r], pivots

    def rank(self) -> int:
        return len(self.rref()[0])

    def same_row_space(self, other: LinearSystem) -> bool:
        """True when both systems span the same space of affine equations."""
        if set(self.unknowns) != set(other.unknowns):
            other = LinearSystem(self.unknowns, other.equations)
        joined = LinearSystem(self.unknowns, self.equations + other.equations)
        return self.rank() == other.rank() == joined.rank()

    def __str__(self):
        return "{" + ", ".join(f"{e} = 0" for e in self.equations) + "}"


@dataclass(frozen=True)
class SolutionSpace:
    """Affine solution set: pivots expressed through the free unknowns."""

    unknowns: tuple[str, ...]
    consistent: bool
    pivots: Mapping[str, LinForm]
    free: tuple[str, ...]

    @property
    def dimension(self) -> int | None:
        return len(self.free) if self.consistent else None

    def value_of(self, tag: str) -> LinForm:
        if not self.consistent:
            raise ValueError("empty solution space")
        if tag in self.pivots:
            return self.pivots[tag]
        return LinForm.var(tag)

    def forces(self, tag: str, value) -> bool:
        """True when every solution has ``tag == value``."""
        if not self.consistent:
            return True
        form = self.value_of(tag)
        return not form.coeffs and form.const == value

    def evaluate(self, form: LinForm) -> LinForm:
        return form.substitute({t: self.value_of(t) for t in form.tags})

    def __str__(self):
        if not self.consistent:
            return "{} (inconsistent)"
        parts = [f"{t} = {self.pivots[t]}" for t in self.unknowns if t in self.pivots]
        if self.free:
            parts.append("free: " + ", ".join(self.free))
        return "{" + "; ".join(parts) + "}"


def solve_linear(system: LinearSystem) -> SolutionSpace:
    """Gauss-Jordan elimination over Q."""
    rows, pivots = system.rref()
    n = len(system.unknowns)
    if n in pivots:
        return SolutionSpace(system.unknowns, False, {}, ())
    free = tuple(t for i, t in enumerate(system.unknowns) if i not in pivots)
    sol = {}
    for row, col in zip(rows, pivots):
        expr = LinForm({}, -row[n])
        for j, t in enumerate(system.unknowns):
            if j != col and row[j] != 0:
                expr = expr - LinForm.var(t, row[j])
        sol[system.unknowns[col]] = expr
    return SolutionSpace(system.unknowns, True, sol, free)
