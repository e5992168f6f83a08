"""Symmetries that survive gluing a second chart onto e:p13.

The surface Im(w) = 2 Re(z1 w^2 conj(z2)) comes from blowing up e:p2 along
{z2 = 0 = w}.  The other chart of that blow-up is reached through

    (z1, z2, w) -> (z1, z2 w, 1/z2)

so a symmetry of the first chart extends to the glued surface exactly when its
transfer has no pole along w = 0 in the new coordinates.  We take the degree-4
solver basis, transfer every field with the pole part written out
explicitly, and keep the real combinations whose pole part cancels.
"""

from crsym import fingerprint, fingerprints_match, get_model, solve_polynomial_symmetries, structure_constants
from crsym.fields import real_kernel
from crsym.poly import Poly

rho = get_model("e:p13").defining
vs = rho.vars
SHIFT = 12  # multiply through by w^SHIFT so every transferred term is a monomial


def transfer(P, dz2=0, dw=0):
    # z1^A z2^B w^C  ->  z1^A w^(-B) (z2 w)^C, exponents of z2 and w bumped by dz2, dw first
    out = {}
    for e, c in P.terms.items():
        a, b, cw = e[vs.z(1)], e[vs.z(2)] + dz2, e[vs.w] + dw
        key = [0] * vs.size
        key[vs.z(1)], key[vs.z(2)], key[vs.w] = a, cw, cw - b + SHIFT
        key = tuple(key)
        out[key] = out.get(key, 0) + c
    return out


def pole_part(X):
    a, b, c = X.comps
    second = transfer(b, dw=1)
    for k, v in transfer(c, dz2=1).items():
        second[k] = second.get(k, 0) + v
    third = {k: -v for k, v in transfer(b, dz2=-2).items()}
    return [
        Poly(vs, {k: v for k, v in d.items() if k[vs.w] < SHIFT and v}) for d in (transfer(a), second, third)
    ]


fields = solve_polynomial_symmetries(rho, 4)
kept = real_kernel(fields, pole_part)
print(f"e:p13 has {len(fields)} symmetries; {len(kept)} extend to the second chart")
fp = fingerprint(structure_constants(kept))
print("fingerprint:", fp)
borel = get_model("e:p123").expected_algebra
print(f"same fingerprint as the {borel.label}:", fingerprints_match(fp, fingerprint(borel.structure())))
