"""
Duality, the multiplication map and the dimension count
=======================================================

Multiplying and then taking the trace pairs complementary pieces of the
Jacobian ring.  This script prints the ranks of those pairings, the kernel of
(A, B) -> A F + B G, the ramification length of the projection to the
second factor, and the two bounds whose clash finishes the argument.
"""

from bijac import exactla, ivhs, jacring, pipeline
from bijac.fields import QQ
from bijac.jacring import CurveContext

ctx = CurveContext(jacring.curve_from_seed(3, 3, 0, 100), QQ)

for deg in [(2, 2), (4, 4), (1, 1)]:
    M = ivhs.pairing_matrix(ctx, deg)
    comp = tuple(ivhs.complementary_degree(ctx, deg))
    r = exactla.rank(M, QQ, len(M[0]))
    print(f"R_{deg} x R_{comp}: {len(M)} x {len(M[0])}, rank {r}")

print()
print("duality record:", ivhs.duality_report(ctx).outputs["items"])

# Ramification: the scheme F = F_x0 = F_x1 has length 2g - 2 + 2d.
res = jacring.scheme_length(jacring.ramification_generators(ctx))
print()
print("ramification length:", res.length, "expected", jacring.ramification_degree(3, 3))
print("codimension trace:", res.trace)

# The multiplication map needs d, e >= 4 to have a nonzero domain.
ctx44 = CurveContext(jacring.curve_from_seed(4, 4, 0, 100), QQ)
rec = pipeline.check_mu(ctx44, pipeline.CheckOptions(mu_probes=5))
print()
print("kernel dims of (A, B) -> AF + BG at (4,4):", [p["kernel_dim"] for p in rec.outputs["probes"]])

for d, e in [(3, 3), (4, 5), (5, 5)]:
    rep = ivhs.bounds_report(d, e)
    print(f"({d},{e}): lower {rep['lower']}  upper {rep['upper']}  contradiction {rep['contradiction']}")
