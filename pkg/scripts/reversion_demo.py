"""Compositional reversion through parameter representation.

Represents X in powers of Phi = X(1+X) and prints the coefficients, which
are the signed Catalan numbers; cross-checks degree by degree against the
classical Lagrange inversion formula.
"""

import math
from fractions import Fraction

from gpseries import Ambient, GroupSplit, QQ, lex_order
from gpseries.residues import check_parameters, represent
from gpseries.series import mul

amb = Ambient(GroupSplit(0, 1), lex_order(1), QQ)
x = amb.var(1)
phi = mul(x, amb.one() + x)
p = check_parameters([phi])

degrees = 10
rep = represent(x, p, ((1,), (degrees,)))
print("X = sum_i a_i (X + X^2)^i with")
for i in range(1, degrees + 1):
    a_i = rep[(i,)].coefficient_at((0,))
    # Lagrange inversion: a_i = (1/i) [t^(i-1)] (1+t)^(-i), a signed Catalan
    expect = Fraction((-1) ** (i - 1) * math.comb(2 * i - 2, i - 1), i)
    status = "ok" if a_i == expect else f"MISMATCH (expected {expect})"
    print(f"  a_{i} = {a_i}  {status}")
