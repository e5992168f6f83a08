"""Models with the same symmetry algebra that are still different.

Every surface below carries the parabolic p_{1,n+1}.  Two invariants separate
them: the highest vanishing order of a symmetry at the origin, and how many
symmetries vanish identically on the Levi-degenerate hyperplane w = 0.
"""

from crsym import eq_one_model, max_vanishing_order, vanishing_on_locus, verify_model, vfrepres_model

n = 2
print(f"n = {n}, all of dimension {n * n + 2 * n + 2}")
print(f"{'model':28} {'verified':>8} {'max order':>10} {'vanish on w=0':>14}")
models = [eq_one_model(n, 1)] + [vfrepres_model(n, m, eps) for m in (1, 2, 3) for eps in (1, -1)]
for rec in models:
    ok = verify_model(rec, solver=False).passed
    order = max_vanishing_order(rec.generators)
    flat = vanishing_on_locus(rec.generators)
    print(f"{rec.name:28} {str(ok):>8} {order:>10} {flat:>14}")
