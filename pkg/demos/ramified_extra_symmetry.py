"""A tangent field outside the listed u(pbar,qbar) + sol(2) span.

For the ramified model Im(w^3) = |w|^4 |z1|^2 the listed generators span a
3-dimensional algebra, yet the degree-4 solver returns 5 fields.  This script
exhibits one of the extra fields, checks it exactly and shows that it is not
in the span of the listed generators.
"""

from crsym import get_model, is_tangent, parse_field, solve_polynomial_symmetries, span_contains

rec = get_model("ramified-n1-m2-r3")
rho = rec.defining
print("surface:", rho.rho)
print("listed generators:")
for X in rec.generators:
    print("   ", X)

solved = solve_polynomial_symmetries(rho, 4)
print(f"\nsolver at degree <= 4 finds {len(solved)} fields")

extra = parse_field("Re((-2*i*z1^2*w^2 + 3*w)*d/dz1 - 2*i*z1*w^3*d/dw)")
verdict = is_tangent(extra, rho)
print("\nextra field:", extra)
print("tangent:", bool(verdict), f"({verdict.method}, multiplier {verdict.multiplier})")
print("in the listed span:", span_contains(list(rec.generators), extra) is not None)
print("in the solver span:", span_contains(solved, extra) is not None)
