"""Blow up a hyperquadric at a point and recover its symmetries from scratch.

The pulled-back surface loses the full su(p,q) symmetry of the quadric.  The
polynomial solver finds the surviving fields, and their structure constants
are compared against the parabolic subalgebra that fixes the blown-up point.
"""

from crsym import (
    ParabolicSpec,
    classify_degeneracy,
    fingerprint,
    fingerprints_match,
    format_poly,
    parabolic_subalgebra,
    parse_defining,
    parse_map_spec,
    pullback,
    solve_polynomial_symmetries,
    structure_constants,
)

quad = parse_defining("Im(w) - abs2(z1) - abs2(z2)")
print("quadric:      ", format_poly(quad.rho))
print("symmetries:   ", len(solve_polynomial_symmetries(quad, 2)), "(degree <= 2)")

blown = pullback(quad, parse_map_spec("point", 2))
print("\nblown up:     ", format_poly(blown.rho))
fields = solve_polynomial_symmetries(blown, 3)
print("symmetries:   ", len(fields), "(degree <= 3)")
for X in fields:
    print("   ", X)

target = parabolic_subalgebra(1, 3, ParabolicSpec.maximal(2, 1))
report = fingerprints_match(
    fingerprint(structure_constants(fields)), fingerprint(structure_constants(list(target.basis)))
)
print("\nagainst p_{1,3} in su(1,3):", report)

loc = classify_degeneracy(blown)
print("Levi degeneracy certificate:", loc.certificate, f"-> degenerate exactly on {{{loc.kind}}}")
