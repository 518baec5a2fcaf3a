import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclex.algebra import BiPoly, LinearSystem, LinForm, QuadExt, UniPoly, X, Y
from cyclex.detector import (
    ConstraintSet,
    LineSolution,
    Verdict,
    build_template,
    conclude,
    detect,
    extract_constraints,
    integrate_rational,
    line_family_constraints,
    line_reduce,
    reconstruct_F0,
    recurrence_equation,
)
from cyclex.errors import LineNotInvariant, ParityMismatch, UnsupportedDenominator, ZeroDenominator
from cyclex.trig import SystemSpec, rotation_family

I = QuadExt(0, 1, -1)
W2 = QuadExt(0, 1, -2)      # i sqrt 2
TAGS = ("a00", "a20", "a11", "a02", "l")
a00, a20, a11, a02, l = (LinForm.var(t) for t in TAGS)

FIRST_SET = [a20 - a11 - a02 - a00, a20 + a11 - a02 - 2 * l, a00]
SECOND_SET = [a11, a00]


@pytest.fixture(scope="module")
def template(quintic):
    return build_template(quintic, parity="even")


def decomposition(s, t, d, branch=1):
    line = LineSolution(d, branch)
    red = line_reduce(s, t, line)
    return integrate_rational(red.K0, red.X0, t.unknowns, line.field)


def same(u, v):
    return not (LinForm({}, 0) + u - v)


# --- templates -------------------------------------------------------------------


def test_template_with_parity(quintic, template):
    assert template.unknowns == TAGS
    blocks = dict(template.blocks)
    assert blocks == {"a00": BiPoly.const(1), "a20": X**2, "a11": X * Y, "a02": Y**2, "l": quintic.R}
    assert template.instantiate({"a20": 1, "l": 2}) == X**2 + 2 * quintic.R


def test_template_without_parity(quintic):
    t = build_template(quintic, max_deg_cofactor=2)
    assert len(t.unknowns) == 1 + 2 + 3 + 1
    assert len(build_template(quintic).unknowns) == 1 + 2 + 3 + 4 + 1


def test_template_errors(quintic):
    with pytest.raises(ValueError):
        build_template(quintic, max_deg_cofactor=4)
    with pytest.raises(ParityMismatch):
        build_template(quintic, parity="odd")
    with pytest.raises(ParityMismatch):
        build_template(SystemSpec(1, 1, X, Y + X, X), parity="even")


def test_template_for_circle_quintic(circle_quintic):
    t = build_template(circle_quintic, parity="even")
    assert t.unknowns == TAGS
    assert t.blocks[-1][1] == circle_quintic.R


# --- line reduction ----------------------------------------------------------------


def test_line_reduce_on_i(quintic, template):
    red = line_reduce(quintic, template, LineSolution(-1))
    assert red.X0 == UniPoly([0, 0, 0, 1 + I, 0, 1])
    assert red.K0 == UniPoly([a00, 0, a20 + I * a11 - a02, 0, l])


def test_line_reduce_on_i_sqrt2(quintic, template):
    red = line_reduce(quintic, template, LineSolution(-2))
    assert red.X0 == UniPoly([0, 0, 0, 3, 0, 2])          # x^3 (3 + 2 x^2)
    assert red.K0 == UniPoly([a00, 0, a20 + W2 * a11 - 2 * a02, 0, 2 * l])


def test_line_reduce_errors(quintic, template):
    with pytest.raises(LineNotInvariant):
        line_reduce(quintic, template, LineSolution(-3))
    # y = x is a line of singular points of x' = y - x, y' = y - x
    t = build_template(SystemSpec(1, 1, -Y, X, X))
    with pytest.raises(ZeroDenominator):
        line_reduce(SystemSpec(1, 1, Y - X, Y - X, BiPoly()), t, LineSolution(1))


def test_line_solution():
    assert LineSolution(4).alpha == 2 and LineSolution(4, -1).alpha == -2
    assert LineSolution(4).field is None
    assert LineSolution(-1).alpha == I and LineSolution(-1).conjugate().alpha == -I
    with pytest.raises(ValueError):
        LineSolution(-1, 0)


# --- decompositions, against the displayed antiderivatives -------------------------


@pytest.mark.parametrize("branch", [1, -1])
def test_decomposition_on_i(quintic, template, branch):
    dec = decomposition(quintic, template, -1, branch)
    w = branch * I
    (pole,) = dec.pole_part
    assert pole.order == 2 and same(pole.coeff, a00 * (-1 + w) / 4)
    assert not dec.polynomial_part and not dec.atan_terms
    logs = {lt.argument: lt.residue for lt in dec.log_terms}
    assert set(logs) == {UniPoly.x(), UniPoly([1 + w, 0, 1])}
    assert same(logs[UniPoly.x()], ((a20 + a11 - a02) + w * (-a20 + a11 + a02 + a00)) / 2)
    # c log(x^2 + 1 + w) = (c/2) log(x^4 + 2x^2 + 2) - w c arctan(x^2 + 1)
    c = logs[UniPoly([1 + w, 0, 1])]
    assert same(c / 2, ((-a20 - a11 + a02 + 2 * l) + w * (a20 - a11 - a02 - a00)) / 8)
    assert same(-w * c, ((a20 - a11 - a02 - a00) + w * (a20 + a11 - a02 - 2 * l)) / 4)
    text = str(dec)
    assert "log(x^4 + 2*x^2 + 2)" in text and "arctan" in text


@pytest.mark.parametrize("branch", [1, -1])
def test_decomposition_on_i_sqrt2(quintic, template, branch):
    dec = decomposition(quintic, template, -2, branch)
    w = branch * W2
    (pole,) = dec.pole_part
    assert pole.order == 2 and same(pole.coeff, -a00 / 6)
    logs = {lt.argument: lt.residue for lt in dec.log_terms}
    assert set(logs) == {UniPoly.x(), UniPoly([Fraction(3, 2), 0, 1])}
    assert same(logs[UniPoly.x()], (3 * a20 - 6 * a02 - 2 * a00 + 3 * w * a11) / 9)
    assert same(logs[UniPoly([Fraction(3, 2), 0, 1])], (-3 * a20 + 6 * a02 + 9 * l + 2 * a00 - 3 * w * a11) / 18)


def test_decomposition_derivative_numerically(quintic, template):
    """Differentiate the complex antiderivative by central differences."""
    vals = {"a00": Fraction(1, 3), "a20": 2, "a11": -1, "a02": Fraction(5, 2), "l": 3}
    for d in (-1, -2):
        dec = decomposition(quintic, template, d)
        ev = lambda form: complex((LinForm({}, 0) + form).substitute(vals).value())

        def F(z):
            out = sum(ev(p.coeff) / z**p.order for p in dec.pole_part)
            for lt in dec.log_terms:
                out += ev(lt.residue) * cmath.log(lt.argument.map(complex)(z))
            return out

        z, h = 0.7 + 0.3j, 1e-6
        num = dec.K0.map(ev)(z) / dec.X0.map(complex)(z)
        assert (F(z + h) - F(z - h)) / (2 * h) == pytest.approx(num, rel=1e-7)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=5, max_size=5), st.sampled_from([-1, -2]))
def test_decomposition_is_linear_in_the_unknowns(quintic, template, values, d):
    vals = dict(zip(TAGS, values))
    dec = decomposition(quintic, template, d)
    red = line_reduce(quintic, template, LineSolution(d))
    sub = lambda form: (LinForm({}, 0) + form).substitute(vals).value()
    concrete = integrate_rational(red.K0.map(sub), red.X0, (), d)
    got = {lt.argument: sub(lt.residue) for lt in dec.log_terms}
    want = {lt.argument: lt.residue for lt in concrete.log_terms}
    for arg, res in got.items():
        assert res == want.get(arg, 0)
    for p in dec.pole_part:
        match = [q for q in concrete.pole_part if q.order == p.order]
        assert sub(p.coeff) == (match[0].coeff if match else 0)
    assert concrete.verify()


def test_empty_decomposition():
    dec = integrate_rational(UniPoly(), UniPoly([0, 0, 1, 0, 1]))
    assert dec.is_empty() and str(dec) == "0"
    assert extract_constraints(dec).rank() == 0


def test_polynomial_part_and_rational_log():
    # (x^3 + 1) / x = x^2 + 1/x
    dec = integrate_rational(UniPoly([1, 0, 0, 1]), UniPoly([0, 1]))
    assert dec.polynomial_part == UniPoly([0, 0, 0, Fraction(1, 3)])
    assert [lt.residue for lt in dec.log_terms] == [1]


def test_atan_term_for_rational_quadratic():
    # 1 / (x^2 + 1) has no log, only an arctan
    dec = integrate_rational(UniPoly([1]), UniPoly([1, 0, 1]))
    assert not dec.log_terms
    (at,) = dec.atan_terms
    assert at.denominator == UniPoly([1, 0, 1]) and same(at.numerator, LinForm({}, 1))
    # a nonzero constant arctan numerator is an inconsistent equation 1 = 0
    cs = extract_constraints(dec, ("l",))
    assert not conclude(rotation_family(1, -(X**2 + Y**2)), [cs]).solution.consistent
    # with d = -1 the quadratic splits into linear factors
    dec = integrate_rational(UniPoly([1]), UniPoly([1, 0, 1]), d=-1)
    assert not dec.atan_terms and len(dec.log_terms) == 2


def test_unsupported_denominators():
    with pytest.raises(UnsupportedDenominator):
        integrate_rational(UniPoly([1]), UniPoly([1, 1, 0, 1]))         # not even
    with pytest.raises(UnsupportedDenominator):
        integrate_rational(UniPoly([1]), UniPoly([1, 0, 2, 0, 1]))      # (x^2+1)^2
    with pytest.raises(UnsupportedDenominator):
        integrate_rational(UniPoly([1]), UniPoly([1, 0, 0, 0, 0, 0, 1]))
    with pytest.raises(ZeroDenominator):
        integrate_rational(UniPoly([1]), UniPoly())


# --- constraints and conclusions ----------------------------------------------------


def test_first_and_second_sets(quintic, template):
    first, _ = line_family_constraints(quintic, template, -1)
    second, _ = line_family_constraints(quintic, template, -2)
    assert first.equals(FIRST_SET)
    assert second.equals(SECOND_SET)
    assert all(origin for origin, _ in first.origins)


@pytest.mark.parametrize("d, want", [(-1, FIRST_SET), (-2, SECOND_SET)])
@pytest.mark.parametrize("branch", [1, -1])
def test_each_branch_gives_the_whole_set(quintic, template, d, want, branch):
    dec = decomposition(quintic, template, d, branch)
    assert extract_constraints(dec, template.unknowns).equals(want)


def test_conclusion_forces_degree_zero(quintic):
    res, sets = detect(quintic, [-1, -2], parity="even")
    assert res.verdict is Verdict.NONEXISTENCE and res.nonexistence
    assert res.solution.forces("l", 0)
    assert res.exempt.F == Y * quintic.P - X * quintic.Q
    assert "l = 0" in str(res)


def test_single_family_leaves_degree_free(quintic, template):
    first, _ = line_family_constraints(quintic, template, -1)
    res = conclude(quintic, [first])
    assert res.verdict is Verdict.CANDIDATES
    assert res.solution.dimension == 2
    assert res.degree.coeffs


def test_inconsistent_sets(quintic):
    bad = ConstraintSet(LinearSystem(("l",), [l - 1, l - 2]))
    res = conclude(quintic, [bad])
    assert res.nonexistence and not res.solution.consistent
    with pytest.raises(ValueError):
        conclude(quintic, [])


def test_extension_rule_is_weaker(quintic, template):
    """Requiring only natural residues in Q(alpha) does not force l = 0."""
    first, _ = line_family_constraints(quintic, template, -1, log_rule="extension")
    second, _ = line_family_constraints(quintic, template, -2, log_rule="extension")
    assert first.rank() == 2 and second.rank() == 2
    res = conclude(quintic, [first, second])
    assert res.verdict is Verdict.CANDIDATES
    assert res.solution.forces("a00", 0) and res.solution.forces("a11", 0)
    assert not res.solution.forces("l", 0)
    with pytest.raises(ValueError):
        extract_constraints(decomposition(quintic, template, -1), log_rule="other")


def test_reconstruct_F0(quintic, template):
    dec = decomposition(quintic, template, -1)
    assert reconstruct_F0(dec, {"a20": 1, "a02": 1}) == UniPoly([1])
    assert reconstruct_F0(dec, {"a20": 1, "a02": 1, "l": 2}) == UniPoly([1 + I, 0, 1])
    with pytest.raises(ValueError):
        reconstruct_F0(dec, {"a00": 1})
    with pytest.raises(ValueError):
        reconstruct_F0(dec, {"l": 1})


def test_degree_must_be_a_positive_integer():
    s = rotation_family(1, -(X**2 + Y**2))
    half = ConstraintSet(LinearSystem(("l",), [2 * l - 1]))
    res = conclude(s, [half])
    assert res.nonexistence


# --- recurrence along the line --------------------------------------------------------


def _eval(p: UniPoly, vals) -> UniPoly:
    return p.map(lambda c: c.substitute(vals).value() if isinstance(c, LinForm) else c)


def test_recurrence_zero_is_the_first_order_equation(quintic, template):
    eq = recurrence_equation(quintic, LineSolution(-1), 0, template)
    (term,) = eq.terms
    red = line_reduce(quintic, template, LineSolution(-1))
    assert term.derivative_coeff == red.X0
    assert term.value_coeff == -red.K0


def test_recurrence_is_solved_by_a_known_curve():
    """x^2 + y^2 - 1 along y = z + i x is -1 + 2 i x z + z^2."""
    s = rotation_family(1, -(X**2 + Y**2))
    t = build_template(s)
    vals = {"a00": 0, "a10": 0, "a01": 0, "l": 2}
    Fs = [UniPoly([-1]), UniPoly([0, 2 * I]), UniPoly([1])]
    for k in range(3):
        eq = recurrence_equation(s, LineSolution(-1), k, t)
        total = UniPoly()
        for term in eq.terms:
            Fi = Fs[term.index]
            total = total + _eval(term.derivative_coeff, vals) * Fi.derivative() + _eval(term.value_coeff, vals) * Fi
        assert not total, (k, total)
    with pytest.raises(ValueError):
        recurrence_equation(s, LineSolution(-1), -1, t)
    assert "F1'" in str(recurrence_equation(s, LineSolution(-1), 1, t))
