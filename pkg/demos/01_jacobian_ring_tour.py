"""
A tour of the bigraded Jacobian ring
====================================

Pick a random curve of bidegree (3, 3) on P1 x P1, certify that it is
smooth, and look at the dimensions of the Jacobian ideal and ring in each
bidegree.
"""

from bijac import jacring, sigma
from bijac.fields import GF
from bijac.jacring import CurveContext

# A curve from a seed; coefficients are integers in [-100, 100].
F = jacring.curve_from_seed(3, 3, seed=0, height=100)
print("F =", F)

# Work modulo the prime 2^31 - 1.  Full rank mod p implies full rank over QQ.
ctx = CurveContext(F, GF())
verdict = jacring.certify_smooth(ctx)
print("smoothness:", verdict.status, "at bidegree", tuple(verdict.certifying_degree))

# Hilbert table: dim S, dim J, dim R for 0 <= a, b <= 5.
print()
print("  (a,b)   S   J   R")
for a in range(6):
    for b in range(6):
        s, j, r = jacring.hilbert(ctx, (a, b))
        print(f"  ({a},{b})  {s:>3} {j:>3} {r:>3}")

# The ring in bidegree (1, 1) has dimension equal to the genus (here 4),
# and the top piece (5, 5) is a single line.
print()
print("genus:", ctx.genus, " dim R_(1,1):", jacring.hilbert(ctx, (1, 1))[2])
print("dim R_(5,5):", jacring.hilbert(ctx, (5, 5))[2])

# The ideal spanned by monomial multiples of the four partials agrees with
# the image of the first-order operators, twist by twist.
agree = all(sigma.oracle_equiv(ctx, (a, b)) for a in range(-2, 4) for b in range(-2, 4))
print("dF image == partial-derivative ideal on [-2,3]^2:", agree)
