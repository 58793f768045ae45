from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtorus.cyclotomic import CycloElt, cyclotomic_poly, root_of_unity, torsion_order


@st.composite
def elements(draw, M=None):
    M = M or draw(st.integers(1, 24))
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                           max_size=M))
    return CycloElt(M, coeffs)


@st.composite
def triples(draw):
    M = draw(st.integers(1, 24))
    return tuple(draw(elements(M)) for _ in range(3))


def test_cyclotomic_examples():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    with pytest.raises(ValueError):
        cyclotomic_poly(0)


def test_root_of_unity_examples():
    z4 = root_of_unity(4, 1)
    assert z4 * z4 == CycloElt(4, [-1])
    assert root_of_unity(4, 2) == -1
    assert root_of_unity(2, 1) == -1
    assert root_of_unity(8, 3).inverse() == root_of_unity(8, 5)


def test_torsion_order_examples():
    assert torsion_order(root_of_unity(8, 3)) == 8
    assert torsion_order(CycloElt(4, [-1])) == 2
    assert torsion_order(CycloElt(5, [1])) == 1
    assert torsion_order(CycloElt(5, [2])) == 0
    assert torsion_order(CycloElt(5, [])) == 0


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        CycloElt(6, []).inverse()


@pytest.mark.parametrize("M", [1, 2, 3, 5, 8, 12, 15])
def test_roots_have_exact_order(M):
    z = root_of_unity(M, 1)
    power = CycloElt(M, [1])
    for j in range(1, M):
        power = power * z
        assert not power.is_one()
    assert (power * z).is_one()


def test_json_round_trip():
    a = CycloElt(12, [Fraction(1, 3), -2, 0, Fraction(5, 7)])
    assert CycloElt.from_json(12, a.to_json()) == a
    with pytest.raises(ValueError):
        CycloElt.from_json(12, {"num": [1, 2], "den": [1]})


def test_conductor_mismatch():
    with pytest.raises(ValueError):
        root_of_unity(4, 1) + root_of_unity(8, 1)


@given(elements())
def test_inverse(a):
    if a.is_zero():
        return
    assert (a * a.inverse()).is_one()
    assert (a / a).is_one()


@settings(max_examples=60)
@given(triples())
def test_field_axioms(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert (a + (-a)).is_zero()
    assert a - b == a + (-b)
