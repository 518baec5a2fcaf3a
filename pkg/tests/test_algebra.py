from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclex.algebra import (
    BiPoly,
    LinearSystem,
    LinForm,
    NotDivisible,
    QuadExt,
    UniPoly,
    X,
    Y,
    count_real_roots,
    exact_divide,
    isolate_real_roots,
    poly_arith,
    rational_sqrt,
    solve_linear,
    sturm_has_real_root,
    substitute_line,
)
from cyclex.algebra.sturm import squarefree_part

from conftest import from_sympy, polys, small_ints, sx, sy, to_sympy

I = QuadExt(0, 1, -1)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


# --- QuadExt ---------------------------------------------------------------


def test_quadext_rejects_square_discriminant():
    with pytest.raises(ValueError):
        QuadExt(1, 1, 4)
    with pytest.raises(ValueError):
        QuadExt(1, 1, Fraction(9, 4))


def test_gaussian_arithmetic():
    z = QuadExt(1, 1, -1)
    assert z * z == QuadExt(0, 2, -1)
    assert z * z.conjugate() == 2
    assert (1 / z) * z == 1
    assert I**2 == -1
    assert str(z) == "(1 + i)"
    assert complex(QuadExt(1, 1, -2)) == pytest.approx(complex(1, 2**0.5))


def test_mixed_fields_are_rejected():
    with pytest.raises((ValueError, TypeError)):
        QuadExt(0, 1, -1) + QuadExt(0, 1, -2)


def test_sqrt_inside_the_field():
    assert QuadExt(0, 2, -1).sqrt() ** 2 == QuadExt(0, 2, -1)   # 2i = (1+i)^2
    assert QuadExt(-2, 0, -2).sqrt() == QuadExt(0, 1, -2)
    assert QuadExt(-1, -1, -1).sqrt() is None                    # -1-i is not a square in Q(i)
    assert QuadExt(Fraction(-3, 2), 0, -2).sqrt() is None


@given(rationals, rationals, st.sampled_from([-1, -2, 2, 3, -7]))
def test_norm_is_rational(a, b, d):
    z = QuadExt(a, b, d)
    p = z * z.conjugate()
    assert p == a * a - d * b * b
    assert isinstance(p, (Fraction, int)) or p.b == 0


@given(rationals, rationals, rationals, rationals)
def test_field_axioms(a, b, c, e):
    u, v = QuadExt(a, b, -2), QuadExt(c, e, -2)
    assert u * v == v * u
    assert (u + v) * u == u * u + v * u
    if v:
        assert (u / v) * v == u


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(2) is None
    assert rational_sqrt(-1) is None


# --- LinForm and linear systems ---------------------------------------------


def test_linform_arithmetic_and_split():
    a, l = LinForm.var("a"), LinForm.var("l")
    f = a * QuadExt(1, 2, -1) + l - 3
    rat, irr = f.components()
    assert rat == a + l - 3
    assert irr == 2 * a
    assert not f.is_rational()
    assert f.conjugate().components()[1] == -2 * a
    with pytest.raises(TypeError):
        a * l


def test_solve_linear_reference_system():
    a00, a20, a11, a02, l = (LinForm.var(t) for t in ("a00", "a20", "a11", "a02", "l"))
    sys_ = LinearSystem(("a00", "a20", "a11", "a02", "l"),
                        [a00, a11, a20 - a11 - a02 - a00, a20 + a11 - a02 - 2 * l])
    sol = solve_linear(sys_)
    assert sol.consistent and sol.dimension == 1
    assert sol.forces("l", 0) and sol.forces("a00", 0) and sol.forces("a11", 0)
    assert sol.value_of("a20") == a02 or sol.value_of("a02") == a20


def test_solve_linear_empty_and_inconsistent():
    sol = solve_linear(LinearSystem(("p", "q")))
    assert sol.dimension == 2
    l = LinForm.var("l")
    bad = solve_linear(LinearSystem(("l",), [l - 1, l - 2]))
    assert not bad.consistent and bad.dimension is None


def test_linear_system_rejects_undeclared_unknowns():
    with pytest.raises(ValueError):
        LinearSystem(("a",), [LinForm.var("b")])


def test_same_row_space():
    a, b = LinForm.var("a"), LinForm.var("b")
    s1 = LinearSystem(("a", "b"), [a + b, a - b])
    s2 = LinearSystem(("a", "b"), [a, 3 * b])
    s3 = LinearSystem(("a", "b"), [a])
    assert s1.same_row_space(s2)
    assert not s1.same_row_space(s3)


@settings(max_examples=50)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5))
def test_solve_linear_against_sympy(rows):
    tags = ("p", "q", "r")
    forms = [LinForm({t: c for t, c in zip(tags, row[:3])}, row[3]) for row in rows]
    sol = solve_linear(LinearSystem(tags, forms))
    M = sp.Matrix([row[:3] for row in rows])
    aug = sp.Matrix(rows)
    consistent = M.rank() == aug.rank()
    assert sol.consistent == consistent
    if consistent:
        assert sol.dimension == 3 - M.rank()
        # every solution of ours solves the system
        vals = {t: sol.value_of(t) for t in tags}
        for f in forms:
            assert not f.substitute(vals)


# --- UniPoly ----------------------------------------------------------------


def test_unipoly_division_and_gcd():
    p = UniPoly([-1, 0, 1])            # x^2 - 1
    q = UniPoly([1, 1])                 # x + 1
    quot, rem = p.divmod(q)
    assert quot == UniPoly([-1, 1]) and not rem
    assert p.gcd(UniPoly([1, 2, 1])) == q
    g, s, t = p.xgcd(UniPoly([2, 0, 1]))
    assert g == UniPoly([1]) and s * p + t * UniPoly([2, 0, 1]) == g


def test_unipoly_series_inverse_and_inverse_mod():
    S = UniPoly([QuadExt(1, 1, -1), 0, 1])
    inv = S.series_inverse(4)
    assert (S * inv).truncate(4) == UniPoly([1])
    M = UniPoly([2, 0, 1])
    r = M.inverse_mod(S)
    assert (M * r) % S == UniPoly([1])
    with pytest.raises(ZeroDivisionError):
        UniPoly([0, 1]).series_inverse(2)


def test_unipoly_calculus():
    p = UniPoly([1, 2, 3])
    assert p.derivative() == UniPoly([2, 6])
    assert p.integral().derivative() == p
    assert p(Fraction(1, 2)) == Fraction(11, 4)
    assert UniPoly().degree == -1
    assert UniPoly([0, 0, 1, 0, 5]).low_order() == 2


# --- BiPoly -----------------------------------------------------------------


def test_poly_arith_examples():
    assert poly_arith(X + Y, X - Y, "mul") == X**2 - Y**2
    assert not poly_arith(X + Y, BiPoly(), "mul")
    assert poly_arith(X**2 - X * Y + Y**2, X - Y, "mul") == X**3 - 2 * X**2 * Y + 2 * X * Y**2 - Y**3
    assert poly_arith(X, Y, "sub") == X - Y
    with pytest.raises(ValueError):
        poly_arith(X, Y, "div")


def test_exact_divide_examples():
    assert exact_divide(X**4 - Y**4, X**2 + Y**2) == X**2 - Y**2
    with pytest.raises(NotDivisible):
        exact_divide(X**2 + Y**2 + 1, X + Y)


@given(polys(), polys())
def test_exact_divide_inverts_multiplication(p, f):
    if not f:
        return
    assert exact_divide(p * f, f) == p


@given(polys(), polys())
def test_multiplication_matches_sympy(p, q):
    assert to_sympy(p * q) == sp.expand(to_sympy(p) * to_sympy(q))
    if p and q:
        assert (p * q).degree == p.degree + q.degree


def test_substitute_line_examples():
    assert not substitute_line(X**2 + Y**2, I)
    assert substitute_line(2 * X**4 + 2 * X**2 * Y**2 + Y**4, I) == UniPoly([0, 0, 0, 0, 1])
    Xf = -(X - Y) * (X**2 - X * Y + Y**2) + X * (2 * X**4 + 2 * X**2 * Y**2 + Y**4)
    assert substitute_line(Xf, I) == UniPoly([0, 0, 0, QuadExt(1, 1, -1), 0, 1])


@given(polys(), polys(), st.sampled_from([I, QuadExt(0, 1, -2), Fraction(3, 2)]))
def test_substitute_line_is_a_ring_homomorphism(p, q, alpha):
    assert substitute_line(p * q, alpha) == substitute_line(p, alpha) * substitute_line(q, alpha)
    assert substitute_line(p + q, alpha) == substitute_line(p, alpha) + substitute_line(q, alpha)


def test_line_expansion_matches_sympy():
    p = X**3 * Y + 2 * X * Y**2 - Y**3 + 5
    z = sp.Symbol("z")
    alpha = Fraction(2, 3)
    expr = sp.expand(to_sympy(p).subs(sy, z + sp.Rational(2, 3) * sx))
    for k in range(4):
        want = sp.Poly(expr.coeff(z, k), sx).all_coeffs()[::-1] if expr.coeff(z, k) != 0 else []
        got = p.line_expansion(alpha, k)
        assert [sp.Rational(c) for c in got.coeffs] == want


def test_sympy_round_trip():
    p = 3 * X**2 * Y - Fraction(1, 2) * Y**3 + 7
    assert from_sympy(to_sympy(p)) == p


def test_derivatives_and_reflection():
    p = X**3 * Y + X * Y
    assert p.dx() == 3 * X**2 * Y + Y
    assert p.dy() == X**3 + X
    assert p.reflect() == p
    assert (X**3 + Y**2).reflect() == -X**3 + Y**2


# --- Sturm ------------------------------------------------------------------


def test_sturm_examples():
    assert not sturm_has_real_root(UniPoly([1, 0, 1]))
    assert sturm_has_real_root(UniPoly([-2, 0, 1]))
    # (2t^2 + 1)(t^2 + 1): dehomogenised y P - x Q of the quintic
    assert not sturm_has_real_root(UniPoly([1, 0, 3, 0, 2]))
    assert not sturm_has_real_root(UniPoly([5]))


def test_sturm_repeated_and_rational_roots():
    u = UniPoly([0, 1]) ** 2 * UniPoly([-1, 1]) ** 3 * UniPoly([1, 0, 1])
    assert count_real_roots(u) == 2
    assert count_real_roots(u, Fraction(-1, 2), Fraction(1, 2)) == 1
    assert squarefree_part(u).degree == 4


def test_isolate_real_roots():
    u = UniPoly([-2, 0, 1]) * UniPoly([-3, 1])
    boxes = isolate_real_roots(u, Fraction(1, 10**6))
    mids = sorted(float((lo + hi) / 2) for lo, hi in boxes)
    assert mids == pytest.approx([-2**0.5, 2**0.5, 3.0], abs=1e-5)


@settings(max_examples=60)
@given(st.lists(small_ints, min_size=2, max_size=7).filter(lambda c: c[-1] != 0))
def test_sturm_count_matches_numpy_roots(coeffs):
    u = UniPoly([Fraction(c) for c in coeffs])
    roots = np.roots(coeffs[::-1])
    real = sorted(r.real for r in roots if abs(r.imag) < 1e-7)
    distinct = [r for k, r in enumerate(real) if k == 0 or abs(r - real[k - 1]) > 1e-6]
    # Close or multiple roots make the float side ambiguous; compare via sympy there.
    exact = len(sp.Poly(coeffs[::-1], sx).real_roots(multiple=False))
    assert count_real_roots(u) == exact
    if all(abs(a - b) > 1e-3 for a, b in zip(distinct, distinct[1:])):
        assert count_real_roots(u) == len(distinct)
