from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtorus.alternating import build_N
from qtorus.cyclic_ring import p_quotient, p_representatives
from qtorus.matrices import (
    RingMat,
    det,
    det_int,
    determinantal_divisors,
    identity,
    int_inverse,
    integer_smith,
    is_gl,
    is_sl,
    lift_gl,
    mat_mul,
    reduce_mod,
    ring_inverse,
    sl_smith_normal_form,
    smith_normal_form,
)


def ring(m, rows):
    return RingMat(m, tuple(map(tuple, rows)))


@st.composite
def square(draw, m, n_max=4):
    n = draw(st.integers(1, n_max))
    lo, hi = (-9, 9) if m == 0 else (0, m - 1)
    return ring(m, [[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(n)])


@st.composite
def unimodular(draw, n):
    g = [list(r) for r in identity(n)]
    for _ in range(draw(st.integers(0, 8)) if n > 1 else 0):
        i, j = draw(st.sampled_from([(i, j) for i in range(n) for j in range(n) if i != j]))
        k = draw(st.integers(-3, 3))
        g[i] = [a + k * b for a, b in zip(g[i], g[j])]
    if draw(st.booleans()):
        g[0] = [-a for a in g[0]]
    return tuple(map(tuple, g))


def test_det_examples():
    assert det(RingMat.identity(3, 8)) == 1
    assert det(ring(0, [[0, 1], [-1, 0]])) == 1
    assert det(ring(0, [[1, 1], [-1, 0]])) == 1
    assert det_int([[2, 3], [4, 5]]) == -2


def test_gl_sl_examples():
    assert is_gl(ring(8, [[1, 0], [0, 3]])) and not is_sl(ring(8, [[1, 0], [0, 3]]))
    assert not is_gl(ring(8, [[1, 0], [0, 2]]))
    assert is_gl(ring(0, [[1, 0], [0, -1]]))


def test_reduce_mod_examples():
    assert reduce_mod([[9, 1], [0, -1]], 8) == ring(8, [[1, 1], [0, 7]])
    assert reduce_mod([[9, 1], [0, -1]], 0) == ring(0, [[9, 1], [0, -1]])
    assert reduce_mod(build_N([3], 2).full(), 2) == ring(2, build_N([1], 2, 2).full())


def test_lift_examples():
    assert lift_gl(RingMat.identity(3, 7)) == identity(3)
    assert lift_gl(ring(8, [[1, 0], [0, 7]])) == ((1, 0), (0, -1))
    assert lift_gl(ring(8, [[0, 1], [7, 0]])) == ((0, 1), (-1, 0))
    with pytest.raises(ValueError):
        lift_gl(ring(8, [[1, 0], [0, 3]]))


@pytest.mark.parametrize("m", range(2, 9))
def test_lift_exhaustive_2x2(m):
    for a, b, c, d in product(range(m), repeat=4):
        g = ring(m, [[a, b], [c, d]])
        if det(g) not in (1, m - 1):
            continue
        G = lift_gl(g)
        assert reduce_mod(G, m) == g
        assert det_int(G) in (1, -1)


def test_json_round_trip_and_validation():
    A = ring(8, [[3, 0], [0, 6]])
    assert RingMat.from_json(A.to_json()) == A
    with pytest.raises(ValueError):
        RingMat.from_json({"n": 2, "m": 8, "rows": [[1, 2, 3], [4, 5, 6]]})


def test_smith_examples():
    sf = smith_normal_form(ring(8, [[0, 0], [0, 0]]))
    assert sf.diag == (0, 0)
    sf = smith_normal_form(ring(8, [[3, 0], [0, 6]]))
    assert sf.diag == (1, 2)
    N = build_N([1, 2], 5, 8)
    assert smith_normal_form(RingMat(8, N.full())).diag == (1, 1, 2, 2, 0)


def test_sl_smith_examples():
    sf = sl_smith_normal_form(RingMat.identity(3, 8))
    assert sf.diag == (1, 1, 1) and sf.z == 1
    # no SL x SL pair sends diag(1, 3) to the identity over Z/8
    sf = sl_smith_normal_form(ring(8, [[1, 0], [0, 3]]))
    assert sf.diag == (1, 1) and sf.z == 3
    sf = sl_smith_normal_form(ring(8, [[2, 0], [0, 1]]))
    assert sf.diag == (1, 2) and sf.z == 1


def test_determinantal_examples():
    assert determinantal_divisors(RingMat.identity(4, 6)) == (1, 1, 1, 1)
    assert determinantal_divisors(ring(6, [[0] * 3] * 3)) == (0, 0, 0)


@given(square(0))
def test_integer_smith_reconstructs(A):
    D, U, V, Vi = integer_smith(A.rows)
    assert mat_mul(mat_mul(U, A.rows), V) == D
    assert mat_mul(V, Vi) == identity(A.n)
    assert abs(det_int(U)) == 1
    diag = [D[i][i] for i in range(A.n)]
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0


@given(st.sampled_from([2, 3, 4, 6, 8, 9, 12]).flatmap(square))
def test_smith_reconstructs(A):
    for sf in (smith_normal_form(A), sl_smith_normal_form(A)):
        assert is_gl(sf.g) and is_gl(sf.h)
        assert sf.g @ A @ ring_inverse(sf.h) == sf.matrix()
        assert all(h in p_representatives(A.m) for h in sf.diag)
    assert is_sl(sl_smith_normal_form(A).g)


@given(st.sampled_from([0, 6, 8]).flatmap(square), st.data())
def test_cauchy_binet_invariance(A, data):
    G = data.draw(unimodular(A.n))
    g = reduce_mod(G, A.m)
    base = determinantal_divisors(A)
    assert determinantal_divisors(g @ A) == base
    assert determinantal_divisors(A @ g) == base


@given(st.sampled_from([2, 4, 8, 9, 27, 16]).flatmap(square))
def test_smith_chain_from_divisors(A):
    """For prime-power m the diagonal is the chain of successive quotients."""
    d = determinantal_divisors(A)
    diag = smith_normal_form(A).diag
    prev = 1
    for k, dk in enumerate(d):
        if prev == 0:
            break
        if dk != 0:
            assert diag[k] == p_quotient(prev, dk, A.m)
        prev = dk


@given(st.sampled_from([0, 5, 8, 12]).flatmap(square))
def test_ring_inverse(A):
    if not is_gl(A):
        return
    assert A @ ring_inverse(A) == RingMat.identity(A.n, A.m)
    if A.m == 0:
        assert ring_inverse(A).rows == int_inverse(A.rows)
