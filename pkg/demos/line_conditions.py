"""
Ruling out algebraic solutions along invariant lines
====================================================

The quintic has the complex invariant lines y = +-i x and y = +-i sqrt(2) x.
Restricting an unknown cofactor to them and integrating K0/X0 exactly gives
linear conditions; together they force the degree l to zero.
"""

from pathlib import Path

from cyclex import detector
from cyclex.specfile import load_spec

spec = load_spec(Path(__file__).parent / "data" / "quintic.txt")
s = spec.system()
t = detector.build_template(s, parity=spec.parity)
print("K =", t)

# %%
sets = []
for d in spec.lines:
    cs, decs = detector.line_family_constraints(s, t, d)
    line = detector.LineSolution(d)
    print(f"\nalong {line}:")
    print("  int K0/X0 =", decs[0])
    print("  conditions:", cs)
    sets.append(cs)

con = detector.conclude(s, sets, lines=spec.lines)
print()
print(con)

# %%
# Only asking the residues to be natural numbers in Q(alpha) is weaker:
# the same lines then leave l undetermined.
weak = [detector.line_family_constraints(s, t, d, log_rule="extension")[0] for d in spec.lines]
print()
print(detector.conclude(s, weak, lines=spec.lines))
