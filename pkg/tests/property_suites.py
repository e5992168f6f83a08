"""Randomized law checks shared by the acceptance gate.

Each suite is a hypothesis-driven callable with 1000 examples.  Calling it runs
the search and returns how many examples completed, raising on the first
counterexample.
"""

from collections import Counter

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from crsym.blowup import BlowupMap, compose
from crsym.families import heis_fields
from crsym.fields import bracket
from crsym.lie import change_basis, fingerprint, structure_constants
from crsym.poly import Poly, coefficients_in, conjugate, pseudo_divide, substitute
from crsym.unitary import ParabolicSpec, parabolic_subalgebra

from strategies import VS1, VS2, gauss, holo_fields, invertible_matrices, polys

EXAMPLES = 1000
RUNS: Counter = Counter()

_settings = settings(
    max_examples=EXAMPLES,
    deadline=None,
    database=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)


@_settings
@given(polys(VS2), polys(VS2), polys(VS2))
def _ring(P, Q, R):
    zero, one = Poly.zero(VS2), Poly.const(VS2, 1)
    assert (P + Q) + R == P + (Q + R)
    assert P + Q == Q + P
    assert (P * Q) * R == P * (Q * R)
    assert P * Q == Q * P
    assert P * (Q + R) == P * Q + P * R
    assert P + zero == P and P * one == P and (P * zero).is_zero()
    assert (P - P).is_zero()
    RUNS["ring"] += 1


@_settings
@given(polys(VS2), polys(VS2), gauss)
def _involution(P, Q, c):
    assert conjugate(conjugate(P)) == P
    assert conjugate(P * Q) == conjugate(P) * conjugate(Q)
    assert conjugate(P + Q) == conjugate(P) + conjugate(Q)
    assert conjugate(P.scale(c)) == conjugate(P).scale(c.conjugate())
    real = P + conjugate(P)
    assert conjugate(real) == real
    RUNS["involution"] += 1


_images = st.lists(polys(VS1, max_terms=2, max_exp=2, holomorphic=True), min_size=2, max_size=2)


@_settings
@given(polys(VS1, max_terms=3, max_exp=2), _images, _images)
def _substitution(P, a, b):
    A = BlowupMap("random", VS1, tuple(a))
    B = BlowupMap("random", VS1, tuple(b))
    step = substitute(substitute(P, A.substitution()), B.substitution())
    assert substitute(P, compose([A, B]).substitution()) == step
    # substitution is a ring homomorphism commuting with conjugation
    assert substitute(conjugate(P), A.substitution()) == conjugate(substitute(P, A.substitution()))
    RUNS["substitution"] += 1


@_settings
@given(polys(VS2, max_terms=4), polys(VS2, max_terms=3), st.sampled_from(["w", "wb", "z1", "zb2"]))
def _pseudo_division(P, rho, v):
    i = VS2.index(v)
    assume(rho.degree_in(i) > 0)
    q, r, k = pseudo_divide(P, rho, v)
    lc = coefficients_in(rho, i)[rho.degree_in(i)]
    assert lc**k * P == q * rho + r
    assert r.is_zero() or r.degree_in(i) < rho.degree_in(i)
    RUNS["pseudo-division"] += 1


@_settings
@given(holo_fields(VS1), holo_fields(VS1), holo_fields(VS1))
def _bracket(X, Y, Z):
    assert bracket(X, Y) == -bracket(Y, X)
    assert bracket(X, X).is_zero()
    jac = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
    assert jac.is_zero()
    RUNS["bracket"] += 1


_HEIS = structure_constants(heis_fields()[1])
_P12 = structure_constants(list(parabolic_subalgebra(1, 2, ParabolicSpec.maximal(1, 1)).basis))
_REFERENCE = {6: (_HEIS, fingerprint(_HEIS)), 5: (_P12, fingerprint(_P12))}


@_settings
@given(st.sampled_from([5, 6]).flatmap(lambda d: st.tuples(st.just(d), invertible_matrices(d))))
def _fingerprint(case):
    d, P = case
    sc, fp = _REFERENCE[d]
    assert fingerprint(change_basis(sc, P)) == fp
    RUNS["fingerprint"] += 1


SUITES = {
    "ring laws": ("ring", _ring),
    "involution": ("involution", _involution),
    "substitution composition": ("substitution", _substitution),
    "pseudo-division identity": ("pseudo-division", _pseudo_division),
    "bracket antisymmetry/Jacobi": ("bracket", _bracket),
    "fingerprint basis invariance": ("fingerprint", _fingerprint),
}


def run_suite(title: str) -> int:
    key, fn = SUITES[title]
    RUNS[key] = 0
    fn()
    return RUNS[key]
