import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from crsym.catalog import eq_one_model, eq_two_model, vfrepres_model
from crsym.families import heis_fields
from crsym.io import parse_field
from crsym.lie import (
    Fingerprint,
    NotClosedError,
    StructureConstants,
    direct_sum,
    fingerprint,
    fingerprints_match,
    from_relations,
    killing_form,
    structure_constants,
)
from crsym.linalg import LinearDependence
from crsym.unitary import ParabolicSpec, parabolic_subalgebra, su_basis

from strategies import SMALL


def heis3():
    return from_relations(3, {(0, 1): {2: 1}}, "XYZ")


def test_heisenberg_from_printed_fields():
    labels, fields = heis_fields()
    sc = structure_constants(fields[3:], labels[3:])
    assert sc.relations() == ["[X,Y] = 1*Z"]
    assert sc.table == heis3().table


def test_commuting_translations_give_zero_table():
    sc = structure_constants([parse_field("Re(d/dz1)"), parse_field("Re(i*d/dz1)")])
    assert sc.dim == 2 and not sc.table


def test_six_field_relations():
    labels, fields = heis_fields()
    sc = structure_constants(fields, labels)
    assert sc.relations() == [
        "[R,X] = 1*X",
        "[R,Y] = 1*Y",
        "[R,Z] = 2*Z",
        "[J,X] = 1*Y",
        "[J,Y] = -1*X",
        "[X,Y] = 1*Z",
    ]
    assert sc.check_jacobi() is None


def test_not_closed_names_the_pair():
    with pytest.raises(NotClosedError) as info:
        structure_constants([parse_field("Re(d/dz1)"), parse_field("Re(z1^2*d/dz1)")])
    assert info.value.pair == (0, 1)


def test_dependent_basis_is_rejected():
    with pytest.raises(LinearDependence):
        structure_constants([parse_field("Re(d/dz1)"), parse_field("Re(2*d/dz1)")])


def test_table_validation():
    with pytest.raises(ValueError):
        StructureConstants(2, {(1, 0): {0: mpq(1)}})


# fingerprints ------------------------------------------------------------------------------------


def test_abelian_fingerprint():
    fp = fingerprint(from_relations(2, {}))
    assert fp == Fingerprint(2, (2, 0), (2, 0), 2, 0, (0, 0))


def test_su22_is_perfect_with_full_killing_rank():
    fp = fingerprint(structure_constants(list(su_basis(2, 2).basis)))
    # Killing signature (noncompact, compact) = (8, 7): the maximal compact s(u(2)+u(2)) has dim 7
    assert fp == Fingerprint(15, (15,), (15,), 0, 15, (8, 7))


def test_the_two_p13_realizations_differ_only_in_killing_signature():
    spec = ParabolicSpec.maximal(2, 1)
    a = fingerprint(structure_constants(list(parabolic_subalgebra(1, 3, spec).basis)))
    b = fingerprint(structure_constants(list(parabolic_subalgebra(2, 2, spec).basis)))
    # reductive part R + su(2) + R  versus  R + su(1,1) + R
    assert a.killing_signature == (1, 4)
    assert b.killing_signature == (3, 2)
    rep = fingerprints_match(a, b)
    assert not rep and rep.differences == ("killing_signature",)


def test_vfrepres_matches_p12():
    vf = fingerprint(structure_constants(list(vfrepres_model(1, 1, 1).generators)))
    p = fingerprint(structure_constants(list(parabolic_subalgebra(1, 2, ParabolicSpec.maximal(1, 1)).basis)))
    rep = fingerprints_match(vf, p)
    assert rep and "necessary" in str(rep)


def test_heis_is_not_abelian():
    rep = fingerprints_match(fingerprint(heis3()), fingerprint(from_relations(3, {})))
    assert not rep and "derived_series" in rep.differences


@pytest.mark.parametrize("n,s", [(3, 2), (4, 2)])
def test_two_realizations_share_a_fingerprint(n, s):
    a = fingerprint(structure_constants(list(eq_one_model(n, s).generators)))
    b = fingerprint(structure_constants(list(eq_two_model(n, s).generators)))
    assert fingerprints_match(a, b)


def test_series_are_weakly_decreasing():
    labels, fields = heis_fields()
    fp = fingerprint(structure_constants(fields, labels))
    assert fp.derived == (6, 3, 1, 0)
    assert fp.lower_central == (6, 3)
    assert all(x >= y for x, y in zip(fp.derived, fp.derived[1:]))


def test_direct_sum_dimensions():
    s = direct_sum(heis3(), from_relations(2, {(0, 1): {1: 1}}))
    fp = fingerprint(s)
    assert fp.dim == 5 and fp.center == 1


# Killing form ad-invariance on random vectors of the six-dimensional algebra ----------------------


def _killing_value(B, x, y):
    return sum(x[i] * B[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))


@settings(max_examples=1000, deadline=None)
@given(st.lists(SMALL, min_size=18, max_size=18))
def test_killing_form_is_symmetric_and_invariant(vals):
    labels, fields = heis_fields()
    sc = structure_constants(fields, labels)
    B = killing_form(sc)
    x = {i: mpq(v) for i, v in enumerate(vals[:6]) if v}
    y = {i: mpq(v) for i, v in enumerate(vals[6:12]) if v}
    z = {i: mpq(v) for i, v in enumerate(vals[12:]) if v}

    def dense(u):
        return [u.get(i, mpq(0)) for i in range(6)]

    assert all(B[i][j] == B[j][i] for i in range(6) for j in range(6))
    lhs = _killing_value(B, dense(sc.bracket(x, y)), dense(z))
    rhs = _killing_value(B, dense(y), dense(sc.bracket(x, z)))
    assert lhs + rhs == 0
