"""Z^n-quantum tori presented as twisted group algebras.

A presentation is an exponent matrix B over Z/(m): the basis elements
``delta_x`` multiply by ``delta_x delta_y = q^(x^T B y) delta_{x+y}``, where
``q`` is a primitive m-th root of unity.  Concrete coefficients live in
Q(zeta_M) with ``M = lcm(m, 2)``.  ``m = 0`` (q of infinite order) is allowed
for classification only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm
from typing import Mapping, Optional, Sequence

from .alternating import AltMat, canonical_rep
from .cohomology import BiCocycle, QuadraticForm, cohomologous, commutator_form, polarize
from .cyclic_ring import canonical
from .cyclotomic import CycloElt, root_of_unity
from .errors import DEFAULT_MAX_WORK
from .matrices import IntMat, identity, int_inverse, mat_mul, transpose

__all__ = [
    "TorusPresentation",
    "TorusElement",
    "HomogeneousUnit",
    "NormalFormData",
    "Isomorphism",
    "quantum_plane",
    "block_presentation",
    "multiply",
    "homogeneous_mul",
    "homogeneous_inv",
    "commutator_matrix",
    "commutator_group",
    "is_rational",
    "normal_form",
    "tensor_decomposition",
    "is_isomorphic",
    "assemble",
    "transports",
    "is_unit",
    "unit_inverse",
    "zero_divisor_probe",
]

Vec = tuple[int, ...]


@lru_cache(maxsize=4096)
def _zeta_power(M: int, k: int) -> CycloElt:
    return root_of_unity(M, k)


@dataclass(frozen=True)
class TorusPresentation:
    n: int
    m: int
    B: IntMat

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be non-negative")
        if len(self.B) != self.n or any(len(r) != self.n for r in self.B):
            raise ValueError("exponent matrix has the wrong shape")
        object.__setattr__(self, "B", tuple(tuple(canonical(int(x), self.m) for x in r)
                                            for r in self.B))

    @property
    def conductor(self) -> int:
        return lcm(max(self.m, 1), 2)

    @property
    def cocycle(self) -> BiCocycle:
        return BiCocycle(self.n, self.m, self.B)

    def f(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Exponent of q in f(x, y)."""
        return self.cocycle.exponent(x, y)

    def q_power(self, k: int) -> CycloElt:
        if self.m == 0:
            raise ValueError("no concrete field for q of infinite order")
        M = self.conductor
        return _zeta_power(M, (M // self.m) * k % M)

    def scalar(self, x) -> CycloElt:
        return CycloElt(self.conductor, [x])

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "B": [list(r) for r in self.B]}

    @classmethod
    def from_json(cls, data: Mapping) -> "TorusPresentation":
        n, m, B = int(data["n"]), int(data["m"]), data["B"]
        if len(B) != n or any(len(r) != n for r in B):
            raise ValueError(f"B must be {n}x{n}")
        return cls(n, m, tuple(tuple(int(x) for x in r) for r in B))


def quantum_plane(m: int, k: int = 1) -> TorusPresentation:
    """A_{q^k}: u_1 u_2 = q^k u_2 u_1."""
    return TorusPresentation(2, m, ((0, k), (0, 0)))


def block_presentation(n: int, m: int, exps: Sequence[int]) -> TorusPresentation:
    """A_{q^e_1} (x) ... (x) A_{q^e_s} (x) K[Z^(n-2s)] with upper-triangular blocks."""
    if 2 * len(exps) > n:
        raise ValueError("too many blocks")
    B = [[0] * n for _ in range(n)]
    for i, e in enumerate(exps):
        B[2 * i][2 * i + 1] = e
    return TorusPresentation(n, m, tuple(tuple(r) for r in B))


# --- elements ---------------------------------------------------------------

class TorusElement:
    """Finite sum of c_x delta_x with nonzero coefficients in Q(zeta_M)."""

    __slots__ = ("T", "terms")

    def __init__(self, T: TorusPresentation, terms: Mapping[Sequence[int], object] = ()):
        self.T = T
        clean: dict[Vec, CycloElt] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for g, c in items:
            g = tuple(int(x) for x in g)
            if len(g) != T.n:
                raise ValueError(f"degree {g} has the wrong rank")
            if not isinstance(c, CycloElt):
                c = T.scalar(c)
            total = clean.get(g, None)
            c = c if total is None else total + c
            if c.is_zero():
                clean.pop(g, None)
            else:
                clean[g] = c
        self.terms = clean

    @classmethod
    def delta(cls, T: TorusPresentation, g: Sequence[int], c=1) -> "TorusElement":
        return cls(T, {tuple(g): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TorusElement") -> "TorusElement":
        _same(self.T, other.T)
        return TorusElement(self.T, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "TorusElement":
        return TorusElement(self.T, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.T == other.T and self.terms == other.terms

    def __repr__(self):
        body = " + ".join(f"({c!r})*d{g}" for g, c in sorted(self.terms.items())) or "0"
        return f"TorusElement({body})"

    def to_json(self) -> dict:
        return {"terms": [{"gamma": list(g), "coeff": c.to_json()}
                          for g, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, T: TorusPresentation, data: Mapping) -> "TorusElement":
        return cls(T, [(t["gamma"], CycloElt.from_json(T.conductor, t["coeff"]))
                       for t in data["terms"]])


def _same(a: TorusPresentation, b: TorusPresentation) -> None:
    if a != b:
        raise ValueError("elements belong to different presentations")


def multiply(x: TorusElement, y: TorusElement) -> TorusElement:
    _same(x.T, y.T)
    T = x.T
    acc: dict[Vec, CycloElt] = {}
    for g, a in x.terms.items():
        for h, b in y.terms.items():
            k = tuple(u + v for u, v in zip(g, h))
            c = a * b * T.q_power(T.f(g, h))
            acc[k] = acc[k] + c if k in acc else c
    return TorusElement(T, acc)


@dataclass(frozen=True)
class HomogeneousUnit:
    gamma: Vec
    coeff: CycloElt

    def __post_init__(self):
        if self.coeff.is_zero():
            raise ValueError("a homogeneous unit needs a nonzero coefficient")

    def element(self, T: TorusPresentation) -> TorusElement:
        return TorusElement(T, {self.gamma: self.coeff})


def homogeneous_mul(T: TorusPresentation, u: HomogeneousUnit,
                    v: HomogeneousUnit) -> HomogeneousUnit:
    return HomogeneousUnit(tuple(a + b for a, b in zip(u.gamma, v.gamma)),
                           u.coeff * v.coeff * T.q_power(T.f(u.gamma, v.gamma)))


def homogeneous_inv(T: TorusPresentation, u: HomogeneousUnit) -> HomogeneousUnit:
    neg = tuple(-a for a in u.gamma)
    return HomogeneousUnit(neg, u.coeff.inverse() * T.q_power(-T.f(u.gamma, neg)))


def is_unit(x: TorusElement) -> bool:
    return len(x.terms) == 1


def unit_inverse(x: TorusElement) -> TorusElement:
    if not is_unit(x):
        raise ValueError(f"non-homogeneous element with {len(x.terms)} terms is not a unit")
    (g, c), = x.terms.items()
    inv = homogeneous_inv(x.T, HomogeneousUnit(g, c))
    return inv.element(x.T)


def zero_divisor_probe(x: TorusElement, y: TorusElement) -> bool:
    """True iff x * y = 0; never happens for nonzero x, y."""
    if x.is_zero() or y.is_zero():
        raise ValueError("the probe expects nonzero elements")
    return multiply(x, y).is_zero()


# --- commutator data ---------------------------------------------------------

def commutator_matrix(T: TorusPresentation) -> AltMat:
    return commutator_form(T.cocycle)


def commutator_group(T: TorusPresentation) -> tuple[int, int]:
    """(order of C_A, g0) with C_A generated by q^g0; order 0 means infinite."""
    lam = commutator_matrix(T)
    g0 = T.m
    for x in lam.upper:
        g0 = gcd(g0, x)
    if T.m:
        return T.m // gcd(g0, T.m), g0
    return (0 if g0 else 1), g0


def is_rational(T: TorusPresentation) -> bool:
    return T.m > 0 or not any(commutator_matrix(T).upper)


# --- normal form -----------------------------------------------------------------

@dataclass(frozen=True)
class NormalFormData:
    """Decomposition data.

    ``P`` and ``chi`` describe the graded isomorphism onto ``normal_B``:
    delta_x maps to q^chi(x) delta_{P x}.
    """

    n: int
    m: int
    order: int
    g0: int
    h: tuple[int, ...]
    z: int
    P: IntMat
    chi: QuadraticForm
    normal_B: IntMat

    @property
    def s(self) -> int:
        return len(self.h)

    @property
    def chain(self) -> tuple[int, ...]:
        """h_2, ..., h_s (h_1 = 1 always)."""
        return self.h[1:]

    @property
    def laurent_rank(self) -> int:
        return self.n - 2 * self.s

    def block_exponents(self) -> list[int]:
        """Exponents of q for the factors A_{q^e}."""
        exps = [self.g0 * x for x in self.h]
        if exps and 2 * self.s == self.n:
            exps[-1] *= self.z
        return [canonical(e, self.m) for e in exps]

    def key(self) -> tuple:
        return (self.n, self.order, self.h, self.z)

    def to_json(self) -> dict:
        return {
            "n": self.n, "m": self.m, "commutator_order": self.order, "g0": self.g0,
            "s": self.s, "h": list(self.h), "chain": list(self.chain), "z": self.z,
            "laurent_rank": self.laurent_rank,
            "witness": {"P": [list(r) for r in self.P], "chi": self.chi.to_json()},
            "normal_B": [list(r) for r in self.normal_B],
        }


def normal_form(T: TorusPresentation, max_work: int = DEFAULT_MAX_WORK) -> NormalFormData:
    n, m = T.n, T.m
    lam = commutator_matrix(T)
    order, g0 = commutator_group(T)
    if order == 1:
        h, z, g = (), 1, identity(n)
    else:
        k = order  # 0 for infinite C_A
        reduced = AltMat(n, k, tuple(x // g0 for x in lam.upper))
        rep = canonical_rep(reduced, max_work)
        h, z, g = rep.h, rep.z, rep.g
    exps = [g0 * x for x in h]
    if exps and 2 * len(h) == n:
        exps[-1] *= z
    NB = block_presentation(n, m, exps)
    P = transpose(int_inverse(g))
    pulled = NB.cocycle.pullback(P)
    chi = cohomologous(T.cocycle, pulled)
    assert chi is not None
    return NormalFormData(n, m, order, g0, tuple(h), z, P, chi, NB.B)


def tensor_decomposition(T: TorusPresentation, max_work: int = DEFAULT_MAX_WORK
                         ) -> tuple[list[TorusPresentation], NormalFormData]:
    """Factors A_{q^e} (then a Laurent factor, if any) and the normal-form witness."""
    nf = normal_form(T, max_work)
    factors = [quantum_plane(T.m, e) for e in nf.block_exponents()]
    if nf.laurent_rank:
        r = nf.laurent_rank
        factors.append(TorusPresentation(r, T.m, tuple((0,) * r for _ in range(r))))
    return factors, nf


def assemble(factors: Sequence[TorusPresentation]) -> TorusPresentation:
    """Tensor product of presentations with a common m (block-diagonal B)."""
    if not factors:
        raise ValueError("nothing to assemble")
    m = factors[0].m
    if any(F.m != m for F in factors):
        raise ValueError("factors must share m")
    n = sum(F.n for F in factors)
    B = [[0] * n for _ in range(n)]
    off = 0
    for F in factors:
        for i in range(F.n):
            for j in range(F.n):
                B[off + i][off + j] = F.B[i][j]
        off += F.n
    return TorusPresentation(n, m, tuple(tuple(r) for r in B))


@dataclass(frozen=True)
class Isomorphism:
    """delta_x -> q_L^chi(x) delta_{P x}, with q_L a primitive L-th root of unity."""

    P: IntMat
    chi: QuadraticForm
    L: int

    def to_json(self) -> dict:
        return {"P": [list(r) for r in self.P], "chi": self.chi.to_json(), "L": self.L}


def _embed(T: TorusPresentation, L: int) -> TorusPresentation:
    if T.m == L:
        return T
    r = L // T.m
    return TorusPresentation(T.n, L, tuple(tuple(x * r for x in row) for row in T.B))


def transports(T1: TorusPresentation, T2: TorusPresentation, iso: Isomorphism) -> bool:
    """Check that the witness carries the cocycle of T1 onto that of T2."""
    f1 = _embed(T1, iso.L).cocycle
    f2 = _embed(T2, iso.L).cocycle
    diff = tuple(tuple(canonical(x - y, iso.L) for x, y in zip(r2, r1))
                 for r1, r2 in zip(f1.B, f2.pullback(iso.P).B))
    return diff == polarize(iso.chi)


def is_isomorphic(T1: TorusPresentation, T2: TorusPresentation,
                  max_work: int = DEFAULT_MAX_WORK) -> tuple[bool, Optional[Isomorphism]]:
    """Graded isomorphism test, with a witness when the answer is yes."""
    if T1.n != T2.n:
        return False, None
    if (T1.m == 0) != (T2.m == 0):
        o1, _ = commutator_group(T1)
        o2, _ = commutator_group(T2)
        if o1 == 1 and o2 == 1:
            return True, None
        return False, None
    L = lcm(T1.m, T2.m) if T1.m else 0
    A, B = (_embed(T1, L), _embed(T2, L)) if L else (T1, T2)
    na, nb = normal_form(A, max_work), normal_form(B, max_work)
    if (na.order, na.g0, na.h) != (nb.order, nb.g0, nb.h):
        return False, None
    # z is canonical (least point of +-z*D), so the cosets agree iff the z agree
    if na.z != nb.z:
        return False, None
    P = mat_mul(int_inverse(nb.P), na.P)
    chi = cohomologous(A.cocycle, B.cocycle.pullback(P))
    if chi is None:
        return False, None
    return True, Isomorphism(P, chi, L)
