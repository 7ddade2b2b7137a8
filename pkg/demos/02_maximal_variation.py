"""
Searching for a full-rank deformation
=====================================

For a deformation direction tau of bidegree (d, e), the symmetric form
B_tau(m_i, m_j) = tr(tau m_i m_j) on the monomials of bidegree (d-2, e-2)
measures the infinitesimal variation.  One tau of rank g is enough: rank is
lower semicontinuous, so a general tau does at least as well.
"""

from bijac import ivhs, jacring
from bijac.bipoly import random_bipoly
from bijac.fields import GF
from bijac.jacring import CurveContext

for d, e in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)]:
    seed = jacring.smooth_seeds(d, e, 1)[0]
    ctx = CurveContext(jacring.curve_from_seed(d, e, seed, 100), GF())
    rec = ivhs.certify_max_ivhs(ctx, trials=20, seed=0)
    hist = rec.outputs["trials"][0]["histogram"]
    print(f"({d},{e})  g={ctx.genus:<2} max rank={rec.outputs['max_rank']:<2} "
          f"status={rec.outputs['status']:<8} rank histogram={hist}")

# A single form, printed in full.  Over the prime field entries are residues.
ctx = CurveContext(jacring.curve_from_seed(3, 3, 0, 100), GF())
form = ivhs.btau_matrix(ctx, random_bipoly((3, 3), 123, 100))
print()
print("B_tau at (3,3), symmetric:", form.is_symmetric(), " rank:", form.rank(ctx.field))
for row in form.matrix:
    print("   ", row)

# tau = F is the trivial deformation: F lies in its own Jacobian ideal,
# so the form vanishes identically.
print("rank of B_F:", ivhs.btau_matrix(ctx, ctx.F).rank(ctx.field))
