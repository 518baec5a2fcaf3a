"""Necessary conditions on the cofactor of an algebraic solution.

Along an invariant line ``y = alpha x`` any algebraic solution F without
that line as a factor restricts to ``F0(x) = F(x, alpha x)``, which solves
``X0 F0' = K0 F0`` with ``K0 = K(x, alpha x)`` and ``X0 = X(x, alpha x)``.
F0 is a polynomial only if ``int K0 / X0`` is a combination of logarithms
of polynomials with natural-number coefficients.  With K written as an
unknown linear combination of monomials, every obstruction to that
(polynomial part, poles, non-logarithmic terms, inadmissible residues)
becomes a linear equation in the unknowns.

Everything is exact: numbers live in Q or in the quadratic field Q(alpha),
and the unknowns are carried as :class:`~cyclex.algebra.LinForm` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .algebra import BiPoly, LinearSystem, LinForm, QuadExt, SolutionSpace, UniPoly, solve_linear
from .algebra.quadext import as_fraction, rational_sqrt
from .darboux import InvariantCurve, origin_lines_curve
from .errors import LineNotInvariant, ParityMismatch, UnsupportedDenominator, ZeroDenominator
from .trig import SystemSpec

__all__ = [
    "DEGREE_TAG",
    "CofactorTemplate",
    "build_template",
    "LineSolution",
    "LineReduction",
    "line_reduce",
    "PoleTerm",
    "LogTerm",
    "AtanTerm",
    "IntegralDecomposition",
    "integrate_rational",
    "ConstraintSet",
    "extract_constraints",
    "line_family_constraints",
    "Verdict",
    "Conclusion",
    "conclude",
    "detect",
    "reconstruct_F0",
    "RecurrenceTerm",
    "RecurrenceEquation",
    "recurrence_equation",
]

DEGREE_TAG = "l"
LOG_RULES = ("rational", "extension")


def _poly_is_rational(p: UniPoly) -> bool:
    return all(not isinstance(c, QuadExt) or c.b == 0 for c in p.coeffs)


def _field_sqrt(c, d):
    """Square root of ``c`` inside Q (``d is None``) or Q(sqrt d), else None."""
    if isinstance(c, QuadExt):
        r = c.sqrt()
    elif d is None:
        return rational_sqrt(c)
    else:
        r = QuadExt(c, 0, d).sqrt()
    if r is not None and r.b == 0:
        return r.a
    return r


# ---------------------------------------------------------------------------
# cofactor template


@dataclass(frozen=True)
class CofactorTemplate:
    """``K = sum a_ij x^i y^j + l * R`` with unknown coefficients.

    ``blocks`` pairs each unknown with the polynomial it multiplies; the
    last block is the top-degree part fixed by the degree of F.
    """

    blocks: tuple[tuple[str, BiPoly], ...]
    parity: str | None = None
    degree_tag: str = DEGREE_TAG

    @property
    def unknowns(self) -> tuple[str, ...]:
        return tuple(tag for tag, _ in self.blocks)

    @property
    def K(self) -> BiPoly:
        out = BiPoly()
        for tag, mono in self.blocks:
            out = out + mono.map(lambda c, t=tag: LinForm.var(t, c))
        return out

    def instantiate(self, values) -> BiPoly:
        """The cofactor for concrete values of the unknowns."""
        out = BiPoly()
        for tag, mono in self.blocks:
            out = out + as_fraction(values.get(tag, 0)) * mono
        return out

    def __str__(self):
        return " + ".join(f"{tag}*({mono})" for tag, mono in self.blocks)


def build_template(s: SystemSpec, max_deg_cofactor: int | None = None, parity: str | None = None) -> CofactorTemplate:
    """Unknown cofactor for an algebraic solution of ``s``.

    A cofactor has degree at most ``m``, the degree of the field, and its
    degree-m part is ``deg(F) * R``; the free monomials therefore have
    degree below m.  ``parity="even"`` (or ``"odd"``) keeps only monomials of
    that total-degree parity, which is justified when the field has a
    definite parity and F may be replaced by ``F(x, y) F(-x, -y)``.
    """
    m = s.m
    top = m - 1 if max_deg_cofactor is None else max_deg_cofactor
    if top > m - 1:
        raise ValueError(f"free cofactor monomials must have degree < {m}, got {top}")
    if parity not in (None, "even", "odd"):
        raise ValueError(f"parity must be None, 'even' or 'odd', got {parity!r}")
    if parity is not None:
        fp = s.field.parity()
        if fp is None:
            raise ParityMismatch("the field has no definite parity; a parity restriction is not justified")
        expected = "even" if (fp + 1) % 2 == 0 else "odd"
        if parity != expected:
            raise ParityMismatch(f"cofactors of this field are {expected}, not {parity}")
        if (m % 2 == 0) != (parity == "even"):  # pragma: no cover - implied by the field parity
            raise ParityMismatch("top block has the wrong parity")
    blocks = []
    for deg in range(top + 1):
        if parity == "even" and deg % 2:
            continue
        if parity == "odd" and deg % 2 == 0:
            continue
        for i in range(deg, -1, -1):
            blocks.append((f"a{i}{deg - i}", BiPoly.monomial(i, deg - i)))
    blocks.append((DEGREE_TAG, s.R))
    return CofactorTemplate(tuple(blocks), parity)


# ---------------------------------------------------------------------------
# lines and their reduction


@dataclass(frozen=True)
class LineSolution:
    """The line ``y = alpha x`` with ``alpha**2 = d``; ``branch`` picks the sign."""

    d: Fraction
    branch: int = 1

    def __post_init__(self):
        object.__setattr__(self, "d", as_fraction(self.d))
        if self.branch not in (1, -1):
            raise ValueError("branch must be +1 or -1")

    @property
    def field(self) -> Fraction | None:
        """``d`` when alpha is irrational, else None."""
        return None if rational_sqrt(self.d) is not None else self.d

    @property
    def alpha(self):
        r = rational_sqrt(self.d)
        if r is not None:
            return self.branch * r
        return QuadExt(0, self.branch, self.d)

    def conjugate(self) -> LineSolution:
        return LineSolution(self.d, -self.branch)

    def __str__(self):
        return f"y = {self.alpha}*x"


@dataclass(frozen=True)
class LineReduction:
    line: LineSolution
    K0: UniPoly
    X0: UniPoly
    unknowns: tuple[str, ...] = ()


def line_reduce(s: SystemSpec, t: CofactorTemplate, line: LineSolution) -> LineReduction:
    """``K0 = K(x, alpha x)`` and ``X0 = X(x, alpha x)`` after checking invariance."""
    alpha = line.alpha
    Xs, Ys = s.X, s.Y
    if Ys.substitute_line(alpha) - Xs.substitute_line(alpha) * alpha:
        raise LineNotInvariant(f"{line} is not invariant")
    X0 = Xs.substitute_line(alpha)
    if not X0:
        raise ZeroDenominator(f"{line} consists of singular points")
    return LineReduction(line, t.K.substitute_line(alpha), X0, t.unknowns)


# ---------------------------------------------------------------------------
# integration of K0 / X0


@dataclass(frozen=True)
class PoleTerm:
    """``coeff / base**order`` in the antiderivative."""

    order: int
    coeff: LinForm
    base: UniPoly = field(default_factory=UniPoly.x)

    def __str__(self):
        return f"({self.coeff})/x^{self.order}"


@dataclass(frozen=True)
class LogTerm:
    """``residue * log(argument)`` with a monic argument."""

    argument: UniPoly
    residue: LinForm

    @property
    def rational_argument(self) -> bool:
        return _poly_is_rational(self.argument)

    def __str__(self):
        return f"({self.residue})*log({self.argument})"


@dataclass(frozen=True)
class AtanTerm:
    """``int numerator / S`` for a constant numerator and irreducible quadratic S.

    Over the algebraic closure this is a conjugate pair of logarithms with
    opposite residues, so it is admissible only when the numerator vanishes.
    """

    denominator: UniPoly
    numerator: LinForm

    def __str__(self):
        return f"int ({self.numerator})/({self.denominator}) dx"


@dataclass(frozen=True)
class IntegralDecomposition:
    """``int K0/X0 = poly + sum poles + sum logs + sum atans``."""

    K0: UniPoly
    X0: UniPoly
    polynomial_part: UniPoly
    pole_part: tuple[PoleTerm, ...]
    log_terms: tuple[LogTerm, ...]
    atan_terms: tuple[AtanTerm, ...] = ()
    unknowns: tuple[str, ...] = ()
    d: Fraction | None = None

    def cleared_residual(self) -> UniPoly:
        """``X0 * (d/dx decomposition - K0/X0)``, a polynomial that must vanish."""
        X0 = self.X0
        acc = self.polynomial_part.derivative() * X0
        for p in self.pole_part:
            acc = acc + X0.shift_down(p.order + 1) * (-p.order * p.coeff)
        for lt in self.log_terms:
            q, r = X0.divmod(lt.argument)
            if r:  # pragma: no cover - arguments are factors of X0
                raise AssertionError("log argument does not divide X0")
            acc = acc + lt.argument.derivative() * q * lt.residue
        for at in self.atan_terms:
            q, r = X0.divmod(at.denominator)
            if r:  # pragma: no cover
                raise AssertionError("denominator does not divide X0")
            acc = acc + q * at.numerator
        return acc - self.K0

    def verify(self) -> bool:
        return not self.cleared_residual()

    def is_empty(self) -> bool:
        return not (self.polynomial_part or self.pole_part or self.log_terms or self.atan_terms)

    def real_presentation(self) -> list[str]:
        """Terms as strings, with a non-rational quadratic log split into
        a log of its norm and an arctan, as one writes it over the reals."""
        out = []
        if self.polynomial_part:
            out.append(f"{self.polynomial_part.format()}")
        out.extend(str(p) for p in self.pole_part)
        for lt in self.log_terms:
            if lt.rational_argument or self.d != -1 or lt.argument.degree != 2 or lt.argument[1]:
                out.append(str(lt))
                continue
            # S = A + i B with B a nonzero rational constant:
            # c log S = (c/2) log(S conj S) - i c arctan(A/B) + const.
            S = lt.argument
            A = UniPoly([S[0].a if isinstance(S[0], QuadExt) else S[0], 0, 1])
            B = S[0].b
            norm = S * S.conjugate()
            c = lt.residue
            atan_coeff = c * QuadExt(0, -1, -1)
            out.append(f"({c / 2})*log({norm.map(lambda v: v.a if isinstance(v, QuadExt) else v)})")
            arg = str(A) if B == 1 else f"-({A})" if B == -1 else f"({A})/{B}"
            out.append(f"({atan_coeff})*arctan({arg})")
        out.extend(str(a) for a in self.atan_terms)
        return out

    def __str__(self):
        return " + ".join(self.real_presentation()) or "0"


def _split_even(S: UniPoly, d) -> list[UniPoly]:
    """Monic factors of degree <= 2 of a monic, squarefree, even S.

    ``S = T(x**2)`` with T of degree at most 2 is factored by the quadratic
    formula in the working field; each ``x**2 - u`` splits when u is a square.
    """
    if S.degree == 0:
        return []
    if not S.is_even():
        raise UnsupportedDenominator(f"{S} is not a polynomial in x^2")
    T = S.even_part_in_square()
    if T.degree == 1:
        roots = [-T[0]]
    elif T.degree == 2:
        p, q = T[1], T[0]
        disc = p * p - 4 * q
        sq = _field_sqrt(disc, d)
        if sq is None:
            raise UnsupportedDenominator(f"{S}: x^2-polynomial {T} is irreducible of degree 2")
        roots = [(-p + sq) / 2, (-p - sq) / 2]
    else:
        raise UnsupportedDenominator(f"{S}: only x^2-polynomials of degree <= 2 are supported")
    factors = []
    for u in roots:
        b = _field_sqrt(u, d)
        if b is None:
            factors.append(UniPoly([-u, 0, 1]))
        else:
            factors.extend([UniPoly([-b, 1]), UniPoly([b, 1])])
    return factors


def integrate_rational(K0: UniPoly, X0: UniPoly, unknowns: Sequence[str] = (), d=None) -> IntegralDecomposition:
    """Exact antiderivative of ``K0 / X0`` for ``X0 = c x^j S(x)``, S even and squarefree.

    The polynomial part is the integrated quotient.  The proper part is
    split as ``U / x^j + V / S`` by inverting S modulo ``x^j``; ``U`` gives
    the poles at 0 and ``log x``, and ``V / S`` is spread over the factors
    of S by modular inversion of the complementary factors.  A quadratic
    factor contributes a log with residue half the x-coefficient of its
    numerator and, if the constant remainder is nonzero, an arctan-type term.
    """
    if not X0:
        raise ZeroDenominator("X0 vanishes identically")
    unknowns = tuple(unknowns)
    j = X0.low_order()
    lc = X0.lc
    S = X0.shift_down(j) / lc
    if S.degree > 0 and S.gcd(S.derivative()).degree > 0:
        raise UnsupportedDenominator(f"{S} is not squarefree")
    factors = _split_even(S, d)

    quot, rem = K0.divmod(X0)
    poly_part = quot.integral()
    N = rem / lc

    poles: list[PoleTerm] = []
    logs: list[LogTerm] = []
    atans: list[AtanTerm] = []
    if j:
        U = (N * S.series_inverse(j)).truncate(j)
        for k in range(j - 1):
            if U[k]:
                order = j - k - 1
                poles.append(PoleTerm(order, U[k] / (-order)))
        if U[j - 1]:
            logs.append(LogTerm(UniPoly.x(), U[j - 1]))
        V = (N - U * S).shift_down(j)
    else:
        V = N
    for Si in factors:
        Mi = S // Si
        Vi = (V * Mi.inverse_mod(Si)) % Si
        if Si.degree == 1:
            if Vi[0]:
                logs.append(LogTerm(Si, Vi[0]))
            continue
        c = Vi[1] / 2
        E = Vi[0] - c * Si[1]
        if c:
            logs.append(LogTerm(Si, c))
        if E:
            atans.append(AtanTerm(Si, E))
    # Leading poles first, then logs in a stable order.
    poles.sort(key=lambda p: -p.order)
    dec = IntegralDecomposition(K0, X0, poly_part, tuple(poles), tuple(logs), tuple(atans), unknowns, d)
    if not dec.verify():  # pragma: no cover - guards the algebra above
        raise AssertionError(f"decomposition check failed: {dec.cleared_residual()}")
    return dec


# ---------------------------------------------------------------------------
# constraints


def _lin(c) -> LinForm:
    return c if isinstance(c, LinForm) else LinForm.constant(c)


@dataclass
class ConstraintSet:
    """Linear equations in the unknowns plus residues that must be natural numbers.

    ``origins`` records, for every term that produced equations, a label
    and the form that must vanish (before splitting into Q-components).
    """

    linear_equations: LinearSystem
    integrality_conditions: list[tuple[str, LinForm]] = field(default_factory=list)
    origins: list[tuple[str, LinForm]] = field(default_factory=list)
    label: str = ""

    @property
    def unknowns(self) -> tuple[str, ...]:
        return self.linear_equations.unknowns

    def rank(self) -> int:
        return self.linear_equations.rank()

    def equals(self, forms: Sequence[LinForm]) -> bool:
        """Same Q-row space as the equations ``form == 0``."""
        other = LinearSystem(self.unknowns, list(forms))
        return self.linear_equations.same_row_space(other)

    def reduced(self) -> list[LinForm]:
        """Rows of the reduced echelon form, one ``form == 0`` each."""
        rows, _ = self.linear_equations.rref()
        return [LinForm({t: c for t, c in zip(self.unknowns, row[:-1])}, row[-1]) for row in rows]

    def __or__(self, other: ConstraintSet) -> ConstraintSet:
        return ConstraintSet(
            self.linear_equations | other.linear_equations,
            self.integrality_conditions + other.integrality_conditions,
            self.origins + other.origins,
            " | ".join(x for x in (self.label, other.label) if x),
        )

    def __str__(self):
        return "{" + ", ".join(f"{f} = 0" for f in self.reduced()) + "}"


def extract_constraints(dec: IntegralDecomposition, unknowns: Sequence[str] | None = None,
                        log_rule: str = "rational", label: str = "") -> ConstraintSet:
    """Linear conditions for ``exp(int K0/X0)`` to be a polynomial.

    All polynomial-part coefficients, pole coefficients and arctan-type
    numerators must vanish.  A log with an argument defined over Q must
    have a rational residue (its w-component vanishes); the residue is
    recorded as an integrality condition.  For a log whose argument is not
    defined over Q, ``log_rule="rational"`` requires the residue to vanish
    entirely, which is the condition one obtains by writing the log as a
    real log plus an arctan and discarding the arctan.  ``"extension"``
    accepts any natural-number residue there, which is all that is strictly
    necessary for F0 to be a polynomial over Q(alpha).
    """
    if log_rule not in LOG_RULES:
        raise ValueError(f"log_rule must be one of {LOG_RULES}")
    if unknowns is None:
        unknowns = dec.unknowns or tuple(sorted(_tags_of(dec)))
    system = LinearSystem(tuple(unknowns))
    cs = ConstraintSet(system, label=label)

    def require(what: str, form) -> None:
        form = _lin(form)
        if form:
            system.add(form)
            cs.origins.append((what, form))

    for k, c in enumerate(dec.polynomial_part.coeffs):
        if k:
            require(f"polynomial part x^{k}", c)
    for p in dec.pole_part:
        require(f"pole x^-{p.order}", p.coeff)
    for at in dec.atan_terms:
        require(f"arctan term over {at.denominator}", at.numerator)
    for lt in dec.log_terms:
        res = _lin(lt.residue)
        if log_rule == "rational" and not lt.rational_argument:
            require(f"log({lt.argument}) with non-rational argument", res)
            continue
        rat, irr = res.components()
        require(f"imaginary part of residue of log({lt.argument})", irr)
        cs.integrality_conditions.append((f"residue of log({lt.argument})", rat))
    return cs


def _tags_of(dec: IntegralDecomposition) -> set[str]:
    tags: set[str] = set()
    for c in dec.K0.coeffs:
        if isinstance(c, LinForm):
            tags |= c.tags
    return tags


def line_family_constraints(s: SystemSpec, t: CofactorTemplate, d, log_rule: str = "rational",
                            branches: Sequence[int] = (1, -1)) -> tuple[ConstraintSet, list[IntegralDecomposition]]:
    """Constraints from every branch ``y = +-sqrt(d) x`` of one line family."""
    total = None
    decs = []
    for br in branches:
        line = LineSolution(d, br)
        red = line_reduce(s, t, line)
        dec = integrate_rational(red.K0, red.X0, t.unknowns, line.field)
        decs.append(dec)
        cs = extract_constraints(dec, t.unknowns, log_rule, label=str(line))
        total = cs if total is None else total | cs
    total.label = f"alpha^2 = {as_fraction(d)}"
    return total, decs


# ---------------------------------------------------------------------------
# conclusions


class Verdict(Enum):
    NONEXISTENCE = "no algebraic solution beyond the given lines"
    CANDIDATES = "candidate cofactors remain"


@dataclass
class Conclusion:
    verdict: Verdict
    solution: SolutionSpace
    degree: LinForm | None
    reasons: list[str]
    exempt: InvariantCurve | None = None
    lines: tuple[Fraction, ...] = ()

    @property
    def nonexistence(self) -> bool:
        return self.verdict is Verdict.NONEXISTENCE

    def __str__(self):
        head = self.verdict.value
        if self.lines:
            head += " (scope: curves without the lines y^2 = d x^2 for d in {" \
                    + ", ".join(str(d) for d in self.lines) + "} as factors)"
        body = [head, f"solution: {self.solution}"]
        body += [f"  {r}" for r in self.reasons]
        if self.exempt is not None:
            body.append(f"exempt: {self.exempt.F} = 0 with cofactor {self.exempt.K}")
        return "\n".join(body)


def _natural(value) -> bool:
    v = value.a if isinstance(value, QuadExt) and value.b == 0 else value
    return isinstance(v, Fraction) and v.denominator == 1 and v >= 0


def conclude(s: SystemSpec, sets: Sequence[ConstraintSet], degree_tag: str = DEGREE_TAG,
             lines: Sequence = ()) -> Conclusion:
    """Solve the combined constraints and decide whether a curve can exist.

    Nonexistence is reported when the equations are inconsistent, force
    the degree to zero (or to a value that is not a positive integer), or
    force a residue to a value that is not a natural number.  The verdict
    only concerns curves that do not contain the supplied lines; the
    origin-lines curve ``y P - x Q`` is reported separately as exempt.
    """
    if not sets:
        raise ValueError("at least one constraint set is required")
    combined = sets[0]
    for cs in sets[1:]:
        combined = combined | cs
    sol = solve_linear(combined.linear_equations)
    try:
        exempt = origin_lines_curve(s)
    except Exception:  # degenerate yP - xQ
        exempt = None
    lines = tuple(as_fraction(d) for d in lines)
    if not sol.consistent:
        return Conclusion(Verdict.NONEXISTENCE, sol, None, ["constraints are inconsistent"], exempt, lines)
    reasons = []
    degree = sol.value_of(degree_tag) if degree_tag in combined.unknowns else None
    verdict = Verdict.CANDIDATES
    if degree is not None and not degree.coeffs:
        deg = degree.const
        if deg == 0:
            reasons.append(f"{degree_tag} = 0: the curve would have degree zero")
            verdict = Verdict.NONEXISTENCE
        elif not _natural(deg):
            reasons.append(f"{degree_tag} = {deg} is not a positive integer")
            verdict = Verdict.NONEXISTENCE
    for what, form in combined.integrality_conditions:
        val = sol.evaluate(form)
        if not val.coeffs and not _natural(val.const):
            reasons.append(f"{what} = {val.const} is not a natural number")
            verdict = Verdict.NONEXISTENCE
    if verdict is Verdict.CANDIDATES:
        reasons.append(f"family of dimension {sol.dimension}; {degree_tag} = {degree}")
    return Conclusion(verdict, sol, degree, reasons, exempt, lines)


def detect(s: SystemSpec, ds: Sequence, parity: str | None = None, max_deg_cofactor: int | None = None,
           log_rule: str = "rational") -> tuple[Conclusion, list[ConstraintSet]]:
    """Template, per-family constraints and the combined conclusion."""
    t = build_template(s, max_deg_cofactor, parity)
    sets = [line_family_constraints(s, t, d, log_rule)[0] for d in ds]
    return conclude(s, sets, t.degree_tag, ds), sets


def reconstruct_F0(dec: IntegralDecomposition, values) -> UniPoly:
    """``prod arg_j ** n_j`` for concrete unknowns; fails unless it is a polynomial.

    Unknowns missing from ``values`` are taken as zero.
    """
    values = {**{t: Fraction(0) for t in dec.unknowns}, **{k: as_fraction(v) for k, v in values.items()}}

    def val(form):
        return _lin(form).substitute(values).value()

    if any(val(c) for k, c in enumerate(dec.polynomial_part.coeffs) if k):
        raise ValueError("nonzero polynomial part")
    if any(val(p.coeff) for p in dec.pole_part) or any(val(a.numerator) for a in dec.atan_terms):
        raise ValueError("nonzero pole or arctan term")
    F0 = UniPoly([1])
    for lt in dec.log_terms:
        n = val(lt.residue)
        if not _natural(n):
            raise ValueError(f"residue {n} of log({lt.argument}) is not a natural number")
        n = n.a if isinstance(n, QuadExt) else n
        F0 = F0 * lt.argument ** int(n)
    return F0


# ---------------------------------------------------------------------------
# higher-order equations along the line


@dataclass(frozen=True)
class RecurrenceTerm:
    """``derivative_coeff * F_i' + value_coeff * F_i``."""

    index: int
    derivative_coeff: UniPoly
    value_coeff: UniPoly


@dataclass(frozen=True)
class RecurrenceEquation:
    """The z^k coefficient of ``X F_x + Y F_y - K F`` along ``y = z + alpha x``."""

    k: int
    terms: tuple[RecurrenceTerm, ...]

    def __str__(self):
        parts = []
        for t in self.terms:
            if t.derivative_coeff:
                parts.append(f"({t.derivative_coeff})*F{t.index}'")
            if t.value_coeff:
                parts.append(f"({t.value_coeff})*F{t.index}")
        return " + ".join(parts) + " = 0"


def recurrence_equation(s: SystemSpec, line: LineSolution, k: int, template: CofactorTemplate | None = None) -> RecurrenceEquation:
    """Coefficient functions of the k-th linear ODE for ``F_0, ..., F_k``.

    Term i reads ``X_{k-i} F_i' + (i Y_{k-i+1} - i alpha' X_{k-i+1} - K_{k-i}) F_i``
    where ``X_j, Y_j, K_j`` are z-coefficients of the expansions along the line.
    The equations are emitted, not solved.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    template = template or build_template(s)
    alpha = line.alpha
    K = template.K

    def Xj(j):
        return s.X.line_expansion(alpha, j)

    def Yj(j):
        return s.Y.line_expansion(alpha, j)

    def Kj(j):
        return K.line_expansion(alpha, j)

    terms = []
    for i in range(k + 1):
        value = Yj(k - i + 1) * i - Xj(k - i + 1) * (i * alpha) - Kj(k - i)
        terms.append(RecurrenceTerm(i, Xj(k - i), value))
    return RecurrenceEquation(k, tuple(terms))
