import math

import pytest
from gmpy2 import mpq
from hypothesis import given, settings

from crsym.catalog import get_model, vfrepres_model
from crsym.families import heis_fields
from crsym.fields import (
    HoloField,
    bracket,
    field_vector,
    is_tangent,
    max_vanishing_order,
    real_action,
    solve_polynomial_symmetries,
    span_contains,
    vanishing_order,
    vector_to_field,
)
from crsym.hypersurface import SignatureVector, quadric
from crsym.io import parse_defining, parse_field
from crsym.linalg import LinearDependence
from crsym.poly import Poly, VarSet, conjugate
from crsym.unitary import chart_algebra

from strategies import VS1, holo_fields, real_polys

QUAD1 = quadric(SignatureVector((1,)))
EX21_N1 = parse_defining("Im(w) - abs2(w)*abs2(z1)")


def F(src, n=None):
    return parse_field(src, n)


# constructors ------------------------------------------------------------------------------


def test_holo_field_rejects_barred_components():
    vs = VarSet(1)
    with pytest.raises(ValueError):
        HoloField(vs, [Poly.var(vs, "zb1"), Poly.zero(vs)])
    with pytest.raises(ValueError):
        HoloField(vs, [Poly.zero(vs)])


def test_field_vector_round_trip():
    X = F("Re((1/2 + i)*z1^2*d/dz1 - 3*i*w*d/dw)")
    assert vector_to_field(X.vars, field_vector(X)) == X


# real_action ---------------------------------------------------------------------------------


def test_real_action_examples():
    assert real_action(F("Re(i*z1*d/dz1)"), QUAD1).is_zero()
    assert real_action(F("Re(d/dw)", 1), QUAD1).is_zero()
    euler = F("Re(z1*d/dz1 - 2*w*d/dw)")
    assert real_action(euler, EX21_N1) == EX21_N1.rho.scale(-2)


def test_real_action_rejects_mismatched_dimension():
    with pytest.raises(ValueError):
        real_action(F("Re(d/dz2)"), QUAD1)


@settings(max_examples=1000, deadline=None)
@given(holo_fields(VS1), real_polys(VS1))
def test_real_action_is_real(X, P):
    A = real_action(X, P)
    assert conjugate(A) == A


# is_tangent --------------------------------------------------------------------------------


@pytest.mark.parametrize("eps", [1, -1])
def test_vfrepres_fields_are_tangent(eps):
    rec = vfrepres_model(1, 1, eps)
    for X in rec.generators:
        assert is_tangent(X, rec.defining)


def test_translation_is_not_tangent_to_blowup():
    v = is_tangent(F("Re(d/dz1)", 1), EX21_N1)
    assert not v and v.method is None


def test_zero_field_is_tangent_with_zero_multiplier():
    v = is_tangent(HoloField.zero(VS1), EX21_N1)
    assert v.tangent and v.method == "multiplier" and v.multiplier.is_zero()


# bracket -------------------------------------------------------------------------------------


def test_bracket_examples():
    assert bracket(F("Re(d/dw)", 1), F("Re(w*d/dw)", 1)) == F("Re(1/2*d/dw)", 1)
    assert bracket(F("Re(z1*d/dz1)"), F("Re(z1*d/dw)")) == F("Re(1/2*z1*d/dw)")


def test_heisenberg_bracket_of_printed_fields():
    labels, fields = heis_fields()
    by = dict(zip(labels, fields))
    assert bracket(by["X"], by["Y"]) == by["Z"]
    assert bracket(by["X"], by["Z"]).is_zero()


# vanishing orders ----------------------------------------------------------------------------


def test_vanishing_order_examples():
    assert vanishing_order(F("Re(d/dw)", 1)) == 0
    assert vanishing_order(F("Re(z1^2*d/dw)")) == 2
    assert vanishing_order(HoloField.zero(VS1)) == math.inf
    for m in (1, 2, 3):
        X = F(f"Re(w^{2 * m}*({m}*z1*d/dz1 + w*d/dw))")
        assert vanishing_order(X) == 2 * m + 1
    # shifted point: z1 vanishes to order 1 at the origin and 0 at z1 = 1
    assert vanishing_order(F("Re(z1*d/dw)"), {"z1": 1}) == 0


@pytest.mark.parametrize("m,expected", [(1, 3), (2, 5)])
def test_max_vanishing_order_of_vfrepres(m, expected):
    assert max_vanishing_order(vfrepres_model(1, m, 1).generators) == expected


def test_max_vanishing_order_small_basis_and_dependence():
    assert max_vanishing_order([F("Re(d/dw)", 1), F("Re(w*d/dw)", 1)]) == 1
    with pytest.raises(LinearDependence):
        max_vanishing_order([F("Re(w*d/dw)", 1), F("Re(2*w*d/dw)", 1)])


def test_span_contains():
    basis = [F("Re(d/dw)", 1), F("Re(i*z1*d/dz1)")]
    assert span_contains(basis, F("Re(3*d/dw - 2*i*z1*d/dz1)")) == {0: mpq(3), 1: mpq(-2)}
    assert span_contains(basis, F("Re(i*d/dw)", 1)) is None


# solver ------------------------------------------------------------------------------------------


def test_solver_counts():
    assert len(solve_polynomial_symmetries(QUAD1, 2)) == 8
    assert len(solve_polynomial_symmetries(EX21_N1, 3)) == 5
    for signs in [(1,), (1, -1), (1, 1, -1)]:
        basis = solve_polynomial_symmetries(quadric(SignatureVector(signs)), 0)
        assert len(basis) == 1
        assert span_contains(basis, F("Re(d/dw)", len(signs))) is not None


def test_solver_output_is_tangent():
    for dfn, D in [(QUAD1, 2), (EX21_N1, 3), (get_model("M5").defining, 3)]:
        for X in solve_polynomial_symmetries(dfn, D):
            assert is_tangent(X, dfn)


@pytest.mark.parametrize("p,q", [(1, 2), (2, 2), (1, 3)])
def test_solver_contains_matrix_images(p, q):
    form, images = chart_algebra(p, q, 0)
    basis = solve_polynomial_symmetries(form.quadric(), 2)
    assert len(basis) == len(images)
    for X in images:
        assert span_contains(basis, X) is not None


@pytest.mark.parametrize("name,D", [("blowup-point-n1-p", 3), ("e:p2", 2), ("M5", 3)])
def test_solver_methods_agree(name, D):
    rho = get_model(name).defining
    a = solve_polynomial_symmetries(rho, D, method="normal_form")
    b = solve_polynomial_symmetries(rho, D, method="multiplier")
    assert len(a) == len(b)
    assert all(span_contains(a, X) is not None for X in b)


def test_solver_argument_checks():
    with pytest.raises(ValueError):
        solve_polynomial_symmetries(QUAD1, -1)
    with pytest.raises(ValueError):
        solve_polynomial_symmetries(QUAD1, 1, method="groebner")
