"""Where symmetry dimensions can and cannot land.

Prints the parabolic dimensions d_n(s), the three thresholds for each n and the
audit of the non-parabolic maximal subalgebras against the parabolic maximum.
"""

from crsym import audit_subalgebra_bound, gap_thresholds, max_parabolic, parabolic_dimension

print("d_n(s) for the maximal parabolics, s = 1 .. n/2 + 1")
for n in range(1, 8):
    row = [parabolic_dimension(n, s) for s in range(1, n // 2 + 2)]
    top, where = max_parabolic(n)
    print(f"  n={n}: {row}   max {top} at s in {sorted(where)}")

print("\nmaximal / submaximal / d0")
for n in range(1, 6):
    print(f"  n={n}: {gap_thresholds(n)}")

print("\nnon-parabolic candidates stay strictly below the maximum:")
for n in (2, 4, 6):
    rep = audit_subalgebra_bound(n)
    print("\n".join("  " + line for line in rep.lines()))
