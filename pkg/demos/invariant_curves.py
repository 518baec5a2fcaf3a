"""
Invariant curves and cofactors
==============================

Cofactors are found by exact polynomial division.  Three families: the
lines through the origin, a rotated Hopf-type system with an algebraic
oval, and a quadratic system with an invariant quartic.
"""

from fractions import Fraction

import cyclex
from cyclex.algebra import X, Y
from cyclex.systems import filiptsov_field

s = cyclex.nonalgebraic_quintic()
c1 = cyclex.origin_lines_curve(s)
print("y P - x Q =", c1.F)
print("cofactor  =", c1.K)
print("top part is deg(F) R:", cyclex.check_top_cofactor(c1, s))
print("div = K1 + (m - n + 1) R:", cyclex.divergence_identity(s))

# %%
# x' = -y + x(a + R), y' = x + y(a + R) with R = -(x^2 + y^2), a = 1.
fam = cyclex.rotation_family_curves(1, -(X**2 + Y**2))
print("\nH =", fam.H, " cofactor", fam.curve.K, " limit cycle:", fam.limit_cycle)
odd = cyclex.rotation_family_curves(1, -X * (X**2 + Y**2))
print("odd degree R: limit cycle:", odd.limit_cycle)

# %%
# The quadratic example at a = 1/6.
a = Fraction(1, 6)
F = cyclex.filiptsov_curve(a)
c = cyclex.cofactor_of(F, filiptsov_field(a))
print("\nF =", F)
print("cofactor =", c.K)
