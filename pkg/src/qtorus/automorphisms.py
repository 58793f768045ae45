"""Graded automorphisms of quantum tori and the splitting for A_q.

Scalars live in a symbolic group: free abelian on named symbols times the
cyclic group mu_M of roots of unity.  An automorphism acts on the basis as
``delta_x -> chi(x) delta_{phi x}``, with chi stored as a homomorphism part
(the values chi(e_i)) times ``q^Q(x)`` for a quadratic form Q without
linear part.  Keeping chi in these coordinates makes composition exact and
lets relation failures be reported as explicit characters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import lcm
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .cohomology import QuadraticForm, cocycle_condition
from .cyclotomic import CycloElt, root_of_unity
from .matrices import IntMat, det_int, identity, int_inverse, mat_mul, transpose
from .torus import HomogeneousUnit, TorusPresentation, quantum_plane

__all__ = [
    "ScalarElt",
    "SymbolicUnit",
    "GradedAut",
    "SplittingParams",
    "Splitting",
    "ConstraintError",
    "G0",
    "G1",
    "G2",
    "apply",
    "compose",
    "inverse",
    "power",
    "is_automorphism",
    "aut_gamma_lambda",
    "lift_g0",
    "lift_g1",
    "lift_g2",
    "splitting",
    "verify_presentation",
    "z1_count",
    "z1_solutions",
    "scalar_aut",
]

G0: IntMat = ((0, 1), (1, 0))
G1: IntMat = ((0, 1), (-1, 0))
G2: IntMat = ((1, 1), (-1, 0))


def default_conductor(m: int) -> int:
    return lcm(max(m, 1), 2)


# --- symbolic scalar group --------------------------------------------------------

@dataclass(frozen=True)
class ScalarElt:
    """zeta_M^tors * prod(symbol^exp)."""

    M: int
    tors: int = 0
    free: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("conductor must be positive")
        object.__setattr__(self, "tors", self.tors % self.M)
        merged: dict[str, int] = {}
        for name, e in self.free:
            merged[name] = merged.get(name, 0) + e
        object.__setattr__(self, "free", tuple(sorted((k, v) for k, v in merged.items() if v)))

    @classmethod
    def one(cls, M: int) -> "ScalarElt":
        return cls(M)

    @classmethod
    def zeta(cls, M: int, k: int = 1) -> "ScalarElt":
        return cls(M, k)

    @classmethod
    def q(cls, m: int, M: int, k: int = 1) -> "ScalarElt":
        if m < 1 or M % m:
            raise ValueError(f"q of order {m} does not live in mu_{M}")
        return cls(M, (M // m) * k)

    @classmethod
    def minus_one(cls, M: int) -> "ScalarElt":
        if M % 2:
            raise ValueError(f"-1 is not in mu_{M}")
        return cls(M, M // 2)

    @classmethod
    def symbol(cls, name: str, M: int, e: int = 1) -> "ScalarElt":
        return cls(M, 0, ((name, e),))

    def _check(self, other: "ScalarElt") -> None:
        if self.M != other.M:
            raise ValueError("conductor mismatch")

    def __mul__(self, other: "ScalarElt") -> "ScalarElt":
        self._check(other)
        return ScalarElt(self.M, self.tors + other.tors, self.free + other.free)

    def __pow__(self, k: int) -> "ScalarElt":
        return ScalarElt(self.M, self.tors * k, tuple((s, e * k) for s, e in self.free))

    def inverse(self) -> "ScalarElt":
        return self ** -1

    def __truediv__(self, other: "ScalarElt") -> "ScalarElt":
        return self * other.inverse()

    def is_one(self) -> bool:
        return self.tors == 0 and not self.free

    @property
    def symbols(self) -> set[str]:
        return {s for s, _ in self.free}

    def bind(self, values: Mapping[str, "ScalarElt"]) -> "ScalarElt":
        out = ScalarElt(self.M, self.tors)
        for s, e in self.free:
            out = out * (values[s] ** e if s in values else ScalarElt.symbol(s, self.M, e))
        return out

    def to_cyclo(self) -> CycloElt:
        if self.free:
            raise ValueError(f"unbound symbols {sorted(self.symbols)}")
        return root_of_unity(self.M, self.tors)

    def __str__(self) -> str:
        parts = [f"zeta{self.M}^{self.tors}"] if self.tors else []
        parts += [s if e == 1 else f"{s}^{e}" for s, e in self.free]
        return "*".join(parts) if parts else "1"


# --- graded automorphisms ---------------------------------------------------------

@dataclass(frozen=True)
class SymbolicUnit:
    """A homogeneous element c * delta_x with symbolic coefficient."""

    gamma: tuple[int, ...]
    coeff: ScalarElt


@dataclass(frozen=True)
class GradedAut:
    """delta_x -> prod(hom_i^x_i) * q^quad(x) * delta_{phi x}.

    ``quad`` never carries a linear part; it is folded into ``hom``.
    """

    m: int
    phi: IntMat
    hom: tuple[ScalarElt, ...]
    quad: QuadraticForm
    M: int = field(default=0)

    def __post_init__(self):
        n = len(self.phi)
        if det_int(self.phi) not in (1, -1):
            raise ValueError("phi must lie in GL_n(Z)")
        M = self.M or default_conductor(self.m)
        object.__setattr__(self, "M", M)
        if len(self.hom) != n or self.quad.n != n or self.quad.m != self.m:
            raise ValueError("inconsistent automorphism data")
        if any(h.M != M for h in self.hom):
            raise ValueError("scalar conductor mismatch")
        if any(self.quad.c):
            qs = [ScalarElt.q(max(self.m, 1), M, c) for c in self.quad.c]
            object.__setattr__(self, "hom", tuple(h * x for h, x in zip(self.hom, qs)))
            object.__setattr__(self, "quad", self.quad.without_linear())

    @property
    def n(self) -> int:
        return len(self.phi)

    def chi(self, x: Sequence[int]) -> ScalarElt:
        out = ScalarElt.q(max(self.m, 1), self.M, self.quad(x))
        for h, xi in zip(self.hom, x):
            out = out * h ** xi
        return out

    def bind(self, values: Mapping[str, ScalarElt]) -> "GradedAut":
        return GradedAut(self.m, self.phi, tuple(h.bind(values) for h in self.hom),
                         self.quad, self.M)

    def is_identity(self) -> bool:
        return (self.phi == identity(self.n) and all(h.is_one() for h in self.hom)
                and not any(self.quad.a) and not any(self.quad.b))

    def describe(self) -> dict:
        return {
            "phi": [list(r) for r in self.phi],
            "hom": [str(h) for h in self.hom],
            "quad": self.quad.to_json(),
        }


def identity_aut(n: int, m: int, M: Optional[int] = None) -> GradedAut:
    M = M or default_conductor(m)
    return GradedAut(m, identity(n), tuple(ScalarElt.one(M) for _ in range(n)),
                     QuadraticForm.zero(n, m), M)


def scalar_aut(hom: Sequence[ScalarElt], m: int) -> GradedAut:
    n = len(hom)
    M = hom[0].M if hom else default_conductor(m)
    return GradedAut(m, identity(n), tuple(hom), QuadraticForm.zero(n, m), M)


def apply(aut: GradedAut, u, binding: Optional[Mapping[str, ScalarElt]] = None):
    """Image of a homogeneous element (symbolic or concrete) under ``aut``."""
    gamma = tuple(u.gamma)
    image = tuple(sum(aut.phi[i][j] * gamma[j] for j in range(aut.n)) for i in range(aut.n))
    c = aut.chi(gamma)
    if isinstance(u, SymbolicUnit):
        return SymbolicUnit(image, u.coeff * c)
    if binding is not None:
        c = c.bind(binding)
    return HomogeneousUnit(image, u.coeff * c.to_cyclo())


def _hom_pullback(hom: Sequence[ScalarElt], phi: Sequence[Sequence[int]],
                  M: int) -> list[ScalarElt]:
    """Values on e_j of x -> prod_i hom_i^((phi x)_i)."""
    n = len(phi)
    out = []
    for j in range(n):
        v = ScalarElt.one(M)
        for i in range(n):
            v = v * hom[i] ** phi[i][j]
        out.append(v)
    return out


def compose(a: GradedAut, b: GradedAut) -> GradedAut:
    """The automorphism a o b (apply b first)."""
    if (a.n, a.m, a.M) != (b.n, b.m, b.M):
        raise ValueError("automorphisms of different tori")
    hom_a = _hom_pullback(a.hom, b.phi, a.M)
    quad_a = a.quad.compose_linear(b.phi)
    hom = tuple(x * y for x, y in zip(b.hom, hom_a))
    return GradedAut(a.m, mat_mul(a.phi, b.phi), hom, b.quad + quad_a, a.M)


def inverse(a: GradedAut) -> GradedAut:
    pinv = int_inverse(a.phi)
    hom = tuple(x.inverse() for x in _hom_pullback(a.hom, pinv, a.M))
    quad = -(a.quad.compose_linear(pinv))
    return GradedAut(a.m, pinv, hom, quad, a.M)


def power(a: GradedAut, k: int) -> GradedAut:
    base = a if k >= 0 else inverse(a)
    out = identity_aut(a.n, a.m, a.M)
    for _ in range(abs(k)):
        out = compose(base, out)
    return out


def is_automorphism(aut: GradedAut, T: TorusPresentation) -> bool:
    if T.n != aut.n or T.m != aut.m:
        raise ValueError("rank or order of q mismatch")
    return cocycle_condition(T.cocycle, aut.phi, aut.quad)


def aut_gamma_lambda(m: int) -> str:
    """Aut(Z^2, lambda) for A_q with ord(q) = m: GL2 iff q^2 = 1."""
    return "GL2" if m in (1, 2) else "SL2"


# --- generator lifts ---------------------------------------------------------

def _q(m: int, M: int, k: int = 1) -> ScalarElt:
    return ScalarElt.q(max(m, 1), M, k)


def lift_g1(m: int, r1: ScalarElt, s1: ScalarElt) -> GradedAut:
    """delta_x -> r1^x1 s1^x2 q^(-x1 x2) delta_{g1 x}."""
    return GradedAut(m, G1, (r1, s1), QuadraticForm(2, m, (0, 0), (-1,), (0, 0)), r1.M)


def lift_g2(m: int, r2: ScalarElt, s2: ScalarElt) -> GradedAut:
    """delta_x -> r2^x1 s2^x2 q^(-C(x1,2) - x1 x2) delta_{g2 x}."""
    return GradedAut(m, G2, (r2, s2), QuadraticForm(2, m, (-1, 0), (-1,), (0, 0)), r2.M)


def lift_g0(m: int, r0: ScalarElt) -> GradedAut:
    """delta_x -> r0^x1 r0^(-x2) q^(x1 x2) delta_{(x2, x1)}; needs q^2 = 1."""
    if aut_gamma_lambda(m) != "GL2":
        raise ValueError(f"the swap is not in Aut(Z^2, lambda) when q^2 != 1 (m = {m})")
    return GradedAut(m, G0, (r0, r0.inverse()), QuadraticForm(2, m, (0, 0), (1,), (0, 0)), r0.M)


# --- splitting -------------------------------------------------------------------

class ConstraintError(ValueError):
    def __init__(self, equation: str, residual: ScalarElt):
        super().__init__(f"constraint {equation} fails (quotient {residual})")
        self.equation = equation
        self.residual = residual


@dataclass(frozen=True)
class SplittingParams:
    mode: str
    m: int
    r1: ScalarElt
    r2: ScalarElt
    s1: ScalarElt
    s2: ScalarElt
    r0: Optional[ScalarElt] = None
    sign: int = 1

    @property
    def M(self) -> int:
        return self.r1.M

    @classmethod
    def sl2(cls, m: int, r1: ScalarElt, r2: ScalarElt, sign: int = 1) -> "SplittingParams":
        """s1 = r2^2 q / r1 and s2 = sign * s1."""
        M = r1.M
        s1 = r2 ** 2 * _q(m, M) / r1
        if sign == 1:
            s2 = s1
        elif sign == -1:
            s2 = s1 * ScalarElt.minus_one(M)
        else:
            raise ValueError("sign must be +1 or -1")
        return cls("SL2", m, r1, r2, s1, s2, None, sign)

    @classmethod
    def gl2(cls, m: int, r0: ScalarElt, r1: ScalarElt, r2: ScalarElt) -> "SplittingParams":
        """s1 = r2^2 q / r1 and s2 = q / r0; valid when r2^4 r0^2 = r1^2."""
        M = r1.M
        s1 = r2 ** 2 * _q(m, M) / r1
        s2 = _q(m, M) / r0
        return cls("GL2", m, r1, r2, s1, s2, r0, 1)

    def constraints(self) -> list[tuple[str, ScalarElt]]:
        """(equation, lhs/rhs) pairs; all quotients are 1 for valid parameters."""
        q = _q(self.m, self.M)
        out = [
            ("s1^2 = s2^2", self.s1 ** 2 / self.s2 ** 2),
            ("s1 = r2^2 q / r1", self.s1 * self.r1 / (self.r2 ** 2 * q)),
        ]
        if self.mode == "GL2":
            if self.r0 is None:
                raise ValueError("GL2 mode needs r0")
            out.append(("r0^2 s1^2 = 1", self.r0 ** 2 * self.s1 ** 2))
            out.append(("r0 s2 = q", self.r0 * self.s2 / q))
        return out

    def to_json(self) -> dict:
        out = {"r1": str(self.r1), "r2": str(self.r2), "s1": str(self.s1), "s2": str(self.s2)}
        if self.r0 is not None:
            out["r0"] = str(self.r0)
        if self.mode == "SL2":
            out["sign"] = "+" if self.sign == 1 else "-"
        return out


@dataclass
class Splitting:
    params: SplittingParams
    generators: dict[str, GradedAut]

    def __call__(self, word: Iterable[str] | str) -> GradedAut:
        """Image of a word in the generators; the rightmost letter acts first."""
        letters = word.split() if isinstance(word, str) else list(word)
        first = next(iter(self.generators.values()))
        out = identity_aut(2, first.m, first.M)
        for name in letters:
            out = compose(out, self.generators[name])
        return out


def splitting(T: TorusPresentation, params: SplittingParams, check: bool = True) -> Splitting:
    if T != quantum_plane(T.m):
        raise ValueError("the splitting is defined for A_q only")
    if T.m != params.m:
        raise ValueError("order of q differs from the parameters")
    if params.mode not in ("SL2", "GL2"):
        raise ValueError(f"unknown mode {params.mode!r}")
    if params.mode == "GL2" and aut_gamma_lambda(T.m) != "GL2":
        raise ValueError("GL2 mode needs q^2 = 1")
    if check:
        for eq, res in params.constraints():
            if not res.is_one():
                raise ConstraintError(eq, res)
    gens = {"g1": lift_g1(T.m, params.r1, params.s1), "g2": lift_g2(T.m, params.r2, params.s2)}
    if params.mode == "GL2":
        gens["g0"] = lift_g0(T.m, params.r0)
    return Splitting(params, gens)


def _relation(name: str, lhs: GradedAut, rhs: GradedAut) -> dict:
    diff = compose(lhs, inverse(rhs))
    ok = diff.is_identity()
    entry = {"name": name, "pass": ok, "residual": None}
    if not ok:
        entry["residual"] = diff.describe()
    return entry


def verify_presentation(sigma: Splitting) -> dict:
    g = sigma.generators
    one = identity_aut(2, g["g1"].m, g["g1"].M)
    rels = [
        _relation("g1^4", power(g["g1"], 4), one),
        _relation("g2^6", power(g["g2"], 6), one),
        _relation("g1^2 = g2^3", power(g["g1"], 2), power(g["g2"], 3)),
    ]
    if "g0" in g:
        g0 = g["g0"]
        rels += [
            _relation("g0^2", power(g0, 2), one),
            _relation("g0 g1 g0 = g1^3", compose(g0, compose(g["g1"], g0)), power(g["g1"], 3)),
            _relation("g0 g2 g0 = g2^5", compose(g0, compose(g["g2"], g0)), power(g["g2"], 5)),
        ]
    return {
        "mode": sigma.params.mode,
        "m": sigma.params.m,
        "params": sigma.params.to_json(),
        "relations": rels,
        "all_pass": all(r["pass"] for r in rels),
    }


# --- Z^1 parametrization counts ----------------------------------------------

def z1_solutions(mode: str, m: int, M: Optional[int] = None) -> Iterator[SplittingParams]:
    """Every solution with all parameters in mu_M."""
    M = M or default_conductor(m)
    if m < 1 or M % m:
        raise ValueError(f"q of order {m} must lie in mu_{M}")
    mu = [ScalarElt.zeta(M, k) for k in range(M)]
    q = _q(m, M)
    if mode == "SL2":
        for r1, r2 in product(mu, repeat=2):
            s1 = r2 ** 2 * q / r1
            for s2 in mu:
                if (s1 ** 2 / s2 ** 2).is_one():
                    sign = 1 if s2 == s1 else -1
                    yield SplittingParams("SL2", m, r1, r2, s1, s2, None, sign)
    elif mode == "GL2":
        if aut_gamma_lambda(m) != "GL2":
            raise ValueError("GL2 mode needs q^2 = 1")
        for r0, r1, r2 in product(mu, repeat=3):
            if (r2 ** 4 * r0 ** 2 / r1 ** 2).is_one():
                yield SplittingParams.gl2(m, r0, r1, r2)
    else:
        raise ValueError(f"unknown mode {mode!r}")


def z1_count(mode: str, m: int, M: Optional[int] = None) -> int:
    """Number of solutions over mu_M (defaults to M = lcm(m, 2))."""
    return sum(1 for _ in z1_solutions(mode, m, M))
