import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtorus.automorphisms import (
    G0,
    G1,
    G2,
    ConstraintError,
    GradedAut,
    ScalarElt,
    SplittingParams,
    SymbolicUnit,
    aut_gamma_lambda,
    apply,
    compose,
    identity_aut,
    inverse,
    is_automorphism,
    lift_g0,
    lift_g1,
    lift_g2,
    power,
    scalar_aut,
    splitting,
    verify_presentation,
    z1_count,
)
from qtorus.cohomology import QuadraticForm
from qtorus.cyclotomic import CycloElt
from qtorus.torus import HomogeneousUnit, TorusPresentation, homogeneous_mul, quantum_plane

M8 = 8


def sym(name, M=M8):
    return ScalarElt.symbol(name, M)


@st.composite
def scalars(draw, M=M8, names=("a", "b", "c")):
    out = ScalarElt.zeta(M, draw(st.integers(0, M - 1)))
    for name in names:
        out = out * ScalarElt.symbol(name, M, draw(st.integers(-2, 2)))
    return out


@st.composite
def auts(draw, m=8):
    """Graded automorphisms of A_q built from the generator lifts and scalars."""
    gens = [lift_g1(m, draw(scalars()), draw(scalars())),
            lift_g2(m, draw(scalars()), draw(scalars())),
            scalar_aut([draw(scalars()), draw(scalars())], m)]
    word = draw(st.lists(st.sampled_from(range(3)), min_size=1, max_size=5))
    out = identity_aut(2, m)
    for k in word:
        out = compose(out, gens[k])
    return out


def test_scalar_group():
    q = ScalarElt.q(8, 8)
    assert q ** 8 == ScalarElt.one(8)
    assert ScalarElt.minus_one(8) == ScalarElt.zeta(8, 4)
    r = sym("r")
    assert (r * r.inverse()).is_one()
    assert str(r ** 2 * q) == "zeta8^1*r^2"
    assert (r * q).bind({"r": q}).to_cyclo() == CycloElt(8, [0, 0, 1])
    with pytest.raises(ValueError):
        ScalarElt.minus_one(3)
    with pytest.raises(ValueError):
        ScalarElt.q(3, 8)
    with pytest.raises(ValueError):
        r.to_cyclo()


def test_aut_gamma_lambda():
    assert aut_gamma_lambda(8) == "SL2"
    assert aut_gamma_lambda(2) == "GL2"
    assert aut_gamma_lambda(1) == "GL2"
    assert aut_gamma_lambda(0) == "SL2"


def test_identity_and_scalar():
    T = quantum_plane(8)
    ident = identity_aut(2, 8)
    assert ident.is_identity() and is_automorphism(ident, T)
    assert scalar_aut([ScalarElt.one(8)] * 2, 8).is_identity()
    a, b = scalar_aut([sym("a"), sym("b")], 8), scalar_aut([sym("c"), sym("a")], 8)
    ab = compose(a, b)
    assert ab.hom == (sym("a") * sym("c"), sym("b") * sym("a"))
    assert is_automorphism(scalar_aut([sym("a"), sym("b")], 8), T)
    with pytest.raises(ValueError):
        GradedAut(8, ((2, 0), (0, 1)), (ScalarElt.one(8),) * 2, QuadraticForm.zero(2, 8))


@pytest.mark.parametrize("m", range(1, 13))
def test_lifts_are_automorphisms(m):
    T = quantum_plane(m)
    M = T.conductor
    r, s = ScalarElt.symbol("r", M), ScalarElt.symbol("s", M)
    assert is_automorphism(lift_g1(m, r, s), T)
    assert is_automorphism(lift_g2(m, r, s), T)
    if m in (1, 2):
        g0 = lift_g0(m, r)
        assert is_automorphism(g0, T)
        assert power(g0, 2).is_identity()
    else:
        with pytest.raises(ValueError):
            lift_g0(m, r)


def test_swap_needs_q_squared_one():
    phi_only = GradedAut(8, G0, (ScalarElt.one(8),) * 2, QuadraticForm(2, 8, (0, 0), (1,), (0, 0)))
    assert not is_automorphism(phi_only, quantum_plane(8))


def test_generator_matrices():
    one = ScalarElt.one(8)
    assert lift_g1(8, one, one).phi == G1
    assert lift_g2(8, one, one).phi == G2
    assert power(lift_g1(8, one, one), 4).is_identity()


def test_apply_concrete():
    T = quantum_plane(8)
    q = ScalarElt.q(8, 8)
    g1 = lift_g1(8, q, ScalarElt.one(8))
    u = HomogeneousUnit((1, 1), CycloElt(8, [1]))
    img = apply(g1, u)
    # r1^x1 s1^x2 q^(-x1 x2) with r1 = q: q^(1 - 1) = 1
    assert img.gamma == (1, -1) and img.coeff.is_one()
    sym_img = apply(lift_g1(8, sym("r"), sym("s")), u, binding={"r": q, "s": q})
    assert sym_img.coeff == T.q_power(1)


@settings(max_examples=50)
@given(auts(), auts(), st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
       st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_compose_matches_sequential_apply(a, b, x, y):
    u = SymbolicUnit(x, ScalarElt.one(M8))
    assert apply(compose(a, b), u) == apply(a, apply(b, u))
    assert compose(a, inverse(a)).is_identity()
    # automorphisms respect the twisted product on homogeneous elements
    T = quantum_plane(8)
    vals = {name: ScalarElt.zeta(8, k) for k, name in enumerate("abc", start=1)}
    ux = HomogeneousUnit(x, CycloElt(8, [1]))
    uy = HomogeneousUnit(y, CycloElt(8, [1]))
    lhs = apply(a, homogeneous_mul(T, ux, uy), vals)
    rhs = homogeneous_mul(T, apply(a, ux, vals), apply(a, uy, vals))
    assert lhs == rhs


@given(auts(), st.lists(scalars(), min_size=2, max_size=2))
def test_scalar_automorphisms_are_normal(a, hom):
    s = scalar_aut(hom, 8)
    conj = compose(a, compose(s, inverse(a)))
    assert conj.phi == ((1, 0), (0, 1))
    assert not any(conj.quad.a) and not any(conj.quad.b)


def test_identity_phi_forces_scalar():
    # with phi = identity the coboundary condition forces zero polarization
    T = quantum_plane(8)
    for a in range(8):
        for b in range(8):
            aut = GradedAut(8, ((1, 0), (0, 1)), (ScalarElt.one(8),) * 2,
                            QuadraticForm(2, 8, (a, 0), (b,), (0, 0)))
            assert is_automorphism(aut, T) == (a == 0 and b == 0)


def test_splitting_examples():
    T = quantum_plane(8)
    q, one = ScalarElt.q(8, 8), ScalarElt.one(8)
    report = verify_presentation(splitting(T, SplittingParams("SL2", 8, q, one, one, one)))
    assert report["all_pass"]
    assert [r["name"] for r in report["relations"]] == ["g1^4", "g2^6", "g1^2 = g2^3"]
    # r1 = r2 = 1 gives s1 = q; both signs of s2 work in characteristic zero
    plus = splitting(T, SplittingParams.sl2(8, one, one, 1))
    minus = splitting(T, SplittingParams.sl2(8, one, one, -1))
    assert verify_presentation(plus)["all_pass"] and verify_presentation(minus)["all_pass"]
    assert plus.generators["g2"] != minus.generators["g2"]
    assert plus("g1 g2").phi == ((-1, 0), (-1, -1))
    T2 = quantum_plane(2)
    q2, one2 = ScalarElt.q(2, 2), ScalarElt.one(2)
    report = verify_presentation(splitting(T2, SplittingParams("GL2", 2, one2, one2, q2, q2, one2)))
    assert report["all_pass"] and len(report["relations"]) == 6


def test_violation_residual():
    one = ScalarElt.one(8)
    params = SplittingParams("SL2", 8, one, one, one, one)
    with pytest.raises(ConstraintError) as err:
        splitting(quantum_plane(8), params)
    assert err.value.equation == "s1 = r2^2 q / r1"
    report = verify_presentation(splitting(quantum_plane(8), params, check=False))
    failed = {r["name"]: r for r in report["relations"] if not r["pass"]}
    assert list(failed) == ["g1^2 = g2^3"]
    # g1^2 (g2^3)^-1 scales both generators by q
    assert failed["g1^2 = g2^3"]["residual"]["hom"] == ["zeta8^1", "zeta8^1"]


def test_splitting_rejections():
    one = ScalarElt.one(8)
    with pytest.raises(ValueError):
        splitting(TorusPresentation(2, 8, ((0, 3), (0, 0))), SplittingParams.sl2(8, one, one))
    with pytest.raises(ValueError):
        splitting(quantum_plane(8), SplittingParams.gl2(8, one, one, one))
    with pytest.raises(ValueError):
        SplittingParams.sl2(8, one, one, sign=2)


def test_z1_count_examples():
    assert z1_count("SL2", 8) == 128
    assert z1_count("SL2", 3, 3) == 9
    assert z1_count("GL2", 2) == 8
    with pytest.raises(ValueError):
        z1_count("GL2", 8)
    with pytest.raises(ValueError):
        z1_count("SL2", 8, 12)
