from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtorus.cyclic_ring import (
    additive_order,
    canonical,
    divides,
    factorize,
    in_p,
    is_unit,
    p_quotient,
    p_representatives,
    prep_of,
    unit_group,
    unit_inverse,
)

moduli = st.integers(min_value=1, max_value=200)
prime_powers = st.sampled_from([2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 128])


@pytest.mark.parametrize("x,m,expected", [(7, 5, 2), (-1, 8, 7), (-3, 0, -3), (12, 1, 0)])
def test_canonical(x, m, expected):
    assert canonical(x, m) == expected


def test_unit_examples():
    assert is_unit(3, 8) and not is_unit(2, 8)
    assert is_unit(-1, 0) and not is_unit(2, 0)
    assert unit_inverse(3, 8) == 3
    with pytest.raises(ValueError):
        unit_inverse(2, 8)


def test_additive_order_examples():
    assert additive_order(2, 8) == 4
    assert additive_order(0, 8) == 1
    assert additive_order(3, 0) == 0


def test_p_representatives():
    assert sorted(p_representatives(8)) == [0, 1, 2, 4]
    assert sorted(p_representatives(6)) == [0, 1, 2, 3]
    assert sorted(p_representatives(5)) == [0, 1]
    # ordered by decreasing additive order
    orders = [additive_order(h, 12) for h in p_representatives(12)]
    assert orders == sorted(orders, reverse=True)


def test_prep_of_examples():
    assert prep_of(3, 8) == (1, 3)
    assert prep_of(6, 8) == (2, 3)
    assert prep_of(-4, 0) == (4, -1)
    assert prep_of(0, 8) == (0, 1)


def test_divides_and_quotient():
    assert divides(2, 4, 8) and not divides(4, 2, 8) and divides(2, 0, 8)
    assert p_quotient(2, 4, 8) == 2
    assert p_quotient(2, 2, 8) == 1
    assert all(p_quotient(1, h, 12) == h for h in p_representatives(12) if h)
    with pytest.raises(ValueError):
        p_quotient(4, 2, 8)


def test_unit_group():
    assert unit_group(8) == [1, 3, 5, 7]
    assert unit_group(5) == [1, 2, 3, 4]
    assert unit_group(1) == [0]


def test_factorize():
    assert factorize(360) == ((2, 3), (3, 2), (5, 1))
    assert factorize(1) == ()


@given(st.integers(-10**6, 10**6), moduli)
def test_prep_of_splits(x, m):
    h, u = prep_of(x, m)
    assert is_unit(u, m)
    assert in_p(h, m)
    assert canonical(u * h, m) == canonical(x, m)
    assert additive_order(h, m) == additive_order(x, m)


@given(st.integers(-10**6, 10**6))
def test_prep_of_integers(x):
    h, u = prep_of(x, 0)
    assert h >= 0 and u in (1, -1) and u * h == x


@given(prime_powers, st.data())
def test_p_closed_under_products_for_prime_powers(m, data):
    P = p_representatives(m)
    h1, h2 = data.draw(st.sampled_from(P)), data.draw(st.sampled_from(P))
    h, u = prep_of(h1 * h2, m)
    assert u == 1 and h == (h1 * h2) % m


@given(moduli, st.integers(0, 10**4), st.integers(0, 10**4))
def test_divides_matches_orders(m, a, b):
    assert divides(a, b, m) == (additive_order(a, m) % additive_order(b, m) == 0)


@given(moduli)
def test_unit_group_matches_gcd(m):
    us = unit_group(m)
    if m > 1:
        assert us == [u for u in range(m) if gcd(u, m) == 1]
        assert all(canonical(u * unit_inverse(u, m), m) == 1 for u in us)
