import pytest
from hypothesis import given, settings

from crsym.families import m5
from crsym.fields import is_tangent
from crsym.io import parse_defining, parse_field
from crsym.parse import (
    ExprSyntaxError,
    NotHolomorphicError,
    NotRealError,
    format_field,
    format_poly,
    parse_poly,
)
from crsym.poly import Poly

from strategies import VS1, VS2, holo_fields, polys


def test_m5_polynomial_from_text():
    dfn = parse_defining("Im(w) - abs2(z1) - abs2(z2)^2")
    assert dfn.n == 2
    assert dfn.rho == m5()


def test_ep2_polynomial_from_text():
    dfn = parse_defining("Im(w) - 2*Re(z1*w*conj(z2))")
    vs = dfn.vars
    z1, z2, w = (Poly.var(vs, v) for v in ("z1", "z2", "w"))
    zb1, zb2, wb = (Poly.var(vs, v) for v in ("zb1", "zb2", "wb"))
    assert dfn.rho == parse_poly("Im(w)", 2) - z1 * w * zb2 - zb1 * wb * z2


def test_unclosed_paren_reports_offset():
    with pytest.raises(ExprSyntaxError) as info:
        parse_defining("Im(w")
    assert info.value.offset == 5


def test_syntax_error_position_inside_expression():
    with pytest.raises(ExprSyntaxError) as info:
        parse_poly("z1 + * w")
    assert info.value.offset == 6


def test_non_real_defining_function_is_rejected_with_difference():
    with pytest.raises(NotRealError) as info:
        parse_defining("w - abs2(z1)")
    assert format_poly(info.value.difference) == "conj(w) - w"


def test_rotation_field():
    X = parse_field("Re(i*z1*d/dz1)")
    assert X.vars.n == 1
    assert format_field(X.vars, X.comps) == "Re((i*z1)*d/dz1)"


def test_barred_coefficient_is_rejected():
    with pytest.raises(NotHolomorphicError):
        parse_field("Re(conj(z1)*d/dz1)")


def test_printed_first_field_of_vfrepres_list_is_tangent():
    # Re(w^{2m} (m xi + w d/dw)) with m = 1, n = 1; xi = z1 d/dz1 in the printed convention
    dfn = parse_defining("Im(w^2) + abs2(w)*abs2(z1)")
    X = parse_field("Re(w^2*(z1*d/dz1 + w*d/dw))", 1)
    assert is_tangent(X, dfn)


def test_variable_count_can_be_forced():
    assert parse_poly("Im(w)", 3).vars.n == 3
    assert parse_poly("z2").vars.n == 2


def test_unknown_function_or_variable():
    with pytest.raises(ExprSyntaxError):
        parse_poly("sin(z1)")
    with pytest.raises(ExprSyntaxError):
        parse_poly("zb1 + 1")


@settings(max_examples=1000, deadline=None)
@given(polys(VS2, max_terms=4))
def test_print_then_parse_polynomials(P):
    assert parse_poly(format_poly(P), 2) == P


@settings(max_examples=1000, deadline=None)
@given(holo_fields(VS1))
def test_print_then_parse_fields(X):
    assert parse_field(str(X), 1) == X
