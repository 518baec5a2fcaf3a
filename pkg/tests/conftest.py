import random
from pathlib import Path
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import strategies as st

from cyclex.algebra import BiPoly
from cyclex.systems import algebraic_quintic, nonalgebraic_quintic
from cyclex.trig import SystemSpec

sx, sy = sp.symbols("x y")


def to_sympy(p: BiPoly):
    """BiPoly with rational or Q(sqrt d) coefficients as a sympy expression."""
    out = sp.Integer(0)
    for (i, j), c in p.terms.items():
        if hasattr(c, "b"):
            coef = sp.Rational(c.a) + sp.Rational(c.b) * sp.sqrt(sp.Rational(c.d))
        else:
            coef = sp.Rational(c)
        out += coef * sx**i * sy**j
    return sp.expand(out)


def from_sympy(expr) -> BiPoly:
    poly = sp.Poly(sp.expand(expr), sx, sy)
    return BiPoly({m: Fraction(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs())})


def random_form(rng: random.Random, deg: int, lo=-5, hi=5) -> BiPoly:
    return BiPoly({(i, deg - i): Fraction(rng.randint(lo, hi)) for i in range(deg + 1)})


def random_system(rng: random.Random, max_n=3, max_m=4) -> SystemSpec:
    n = rng.randint(1, max_n)
    m = rng.randint(n, max_m)
    return SystemSpec(n, m, random_form(rng, n), random_form(rng, n), random_form(rng, m))


small_ints = st.integers(min_value=-5, max_value=5)


@st.composite
def forms(draw, deg):
    return BiPoly({(i, deg - i): Fraction(draw(small_ints)) for i in range(deg + 1)})


@st.composite
def systems(draw, max_n=3, max_m=4):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(n, max_m))
    return SystemSpec(n, m, draw(forms(n)), draw(forms(n)), draw(forms(m)))


@st.composite
def polys(draw, max_deg=3):
    terms = draw(st.dictionaries(
        st.tuples(st.integers(0, max_deg), st.integers(0, max_deg)).filter(lambda ij: sum(ij) <= max_deg),
        small_ints, max_size=6))
    return BiPoly({k: Fraction(v) for k, v in terms.items()})


@pytest.fixture(scope="session")
def quintic():
    return nonalgebraic_quintic()


@pytest.fixture(scope="session")
def circle_quintic():
    return algebraic_quintic()


DATA = Path(__file__).resolve().parent.parent / "demos" / "data"
