"""
A control case with an algebraic cycle
======================================

Same cubic part, R = x^4 + 3x^2y^2 + 2y^4.  Here the cycle is the unit
circle, which the quadrature route must reproduce to rounding.
"""

import json
from pathlib import Path

import numpy as np

import cyclex
from cyclex.specfile import load_spec

spec = load_spec(Path(__file__).parent / "data" / "algebraic_quintic.json")
s = spec.system()
print(json.dumps({"n": s.n, "m": s.m, "R": str(s.R)}))

res = cyclex.compute_cycle(s)
print(f"a = {res.a!r}")
print(f"max |r - 1| = {np.max(np.abs(res.r - 1)):.2e}")

# %%
# Exact check: 1 - x^2 - y^2 divides its own derivative along the field.
c = cyclex.cofactor_of(1 - cyclex.algebra.X**2 - cyclex.algebra.Y**2, s)
print("cofactor:", c.K)
