import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclex.algebra import BiPoly, QuadExt, X, Y
from cyclex.errors import ParityMismatch
from cyclex.trig import (
    SystemSpec,
    TrigPoly,
    VectorField,
    fourier_to_homogeneous,
    g_nonvanishing,
    restrict_to_circle,
    rotation_family,
    to_polar,
    vanishing_directions,
)

from conftest import forms, systems

THETA = np.linspace(0.0, 2 * np.pi, 37)


def test_system_spec_validation():
    with pytest.raises(ValueError):
        SystemSpec(2, 1, X**2, Y**2, X)
    with pytest.raises(ValueError):
        SystemSpec(1, 2, X + 1, Y, X**2)
    s = SystemSpec.from_triples(1, 2, [(0, 1, -1)], [(1, 0, 1)], [(2, 0, 1)])
    assert s.X == -Y + X**3 and s.Y == X + X**2 * Y
    assert s.bernoulli_exponent == -2


def test_rigid_rotation():
    pf = to_polar(SystemSpec(1, 1, -Y, X, BiPoly()))
    assert not pf.f and pf.g == TrigPoly.constant(1) and not pf.h


def test_quintic_polar_form(quintic):
    pf = to_polar(quintic)
    c2 = TrigPoly.cos() ** 2
    assert pf.f == c2 - 2
    assert pf.g == -(c2 + 1)
    assert pf.h == TrigPoly.cos() ** 4 + 1
    assert pf.f.has_parity(4) and pf.g.has_parity(4) and pf.h.has_parity(4)


def test_rotation_family_polar_form():
    R = X**2 - X * Y
    pf = to_polar(rotation_family(Fraction(1, 3), R))
    assert pf.g == TrigPoly.constant(1)
    assert pf.f == TrigPoly.constant(Fraction(1, 3))
    assert pf.h == restrict_to_circle(R)


@settings(max_examples=40)
@given(systems())
def test_polar_inversion_identity(s):
    """f cos - g sin recovers P and f sin + g cos recovers Q on the circle."""
    pf = to_polar(s)
    c, si = np.cos(THETA), np.sin(THETA)
    P = s.P.evaluate_float(c, si)
    Q = s.Q.evaluate_float(c, si)
    f, g = pf.f(THETA), pf.g(THETA)
    assert np.allclose(f * c - g * si, P, atol=1e-12)
    assert np.allclose(f * si + g * c, Q, atol=1e-12)


@settings(max_examples=40)
@given(st.integers(0, 6).flatmap(lambda m: st.tuples(st.just(m), forms(m))))
def test_fourier_round_trip(args):
    m, G = args
    t = restrict_to_circle(G)
    assert t.is_real()
    assert t.has_parity(m)
    assert fourier_to_homogeneous(t, m) == G


def test_reality_of_restrictions(quintic):
    for t in to_polar(quintic).f, to_polar(quintic).g, to_polar(quintic).h:
        for k, c in t.coeffs.items():
            assert t.coeff(-k) == c.conjugate()


def test_fourier_to_homogeneous_examples():
    assert fourier_to_homogeneous(TrigPoly.constant(1), 2) == X**2 + Y**2
    assert fourier_to_homogeneous(TrigPoly.cos() ** 2, 2) == X**2
    assert fourier_to_homogeneous(TrigPoly.cos() ** 4 + 1, 4) == X**4 + (X**2 + Y**2) ** 2


def test_fourier_to_homogeneous_errors():
    with pytest.raises((ParityMismatch, ValueError)):
        fourier_to_homogeneous(TrigPoly.cos(), 2)
    with pytest.raises((ParityMismatch, ValueError)):
        fourier_to_homogeneous(TrigPoly.cos() ** 4, 2)
    with pytest.raises(ValueError):
        fourier_to_homogeneous(TrigPoly({2: QuadExt(0, 1, -1)}), 2)


def test_trig_evaluation_matches_circle_values():
    p = 3 * X**3 - X * Y**2 + Fraction(1, 2) * Y**3
    t = restrict_to_circle(p)
    assert np.allclose(t(THETA), p.evaluate_float(np.cos(THETA), np.sin(THETA)))
    assert t.mean() == 0


def test_g_nonvanishing_examples(quintic):
    assert g_nonvanishing(quintic)
    assert not g_nonvanishing(SystemSpec(1, 1, X, Y, X))
    assert g_nonvanishing(SystemSpec(3, 3, -Y**3, X**3, BiPoly()))


def test_vanishing_directions_cover_both_axes():
    # x Q - y P = -y^2 vanishes on y = 0 only
    s = SystemSpec(1, 1, X + Y, Y, X)
    assert not g_nonvanishing(s)
    assert vanishing_directions(s) == [0.0]
    # x Q - y P = x^2: the line x = 0
    s = SystemSpec(1, 2, X, X + Y, X**2)
    assert vanishing_directions(s) == pytest.approx([math.pi / 2], abs=1e-9)
    # x Q - y P = x (x - y)
    s = SystemSpec(1, 2, X, X, X**2)
    assert vanishing_directions(s) == pytest.approx([math.pi / 4, math.pi / 2], abs=1e-9)


@settings(max_examples=40)
@given(systems(max_n=3, max_m=3))
def test_g_nonvanishing_matches_sampling(s):
    G = s.angular_form()
    if not G:
        assert not g_nonvanishing(s)
        return
    vals = to_polar(s).g(np.linspace(0, 2 * np.pi, 4001))
    if g_nonvanishing(s):
        assert np.all(vals > 0) or np.all(vals < 0)
    else:
        # a real zero exists; the sampled minimum of |g| must be small or change sign
        for th in vanishing_directions(s):
            assert abs(to_polar(s).g(th)) < 1e-6


def test_vector_field_parity(quintic):
    assert quintic.field.parity() == 1
    assert VectorField(X**2, Y**2).parity() == 0
    assert VectorField(X + X**2, Y).parity() is None
    assert quintic.field.divergence() == quintic.X.dx() + quintic.Y.dy()
