"""Biadditive 2-cocycles on Z^n with values in a cyclic group <q> of order m.

A cocycle is stored by its exponent matrix B, meaning f(x, y) = q^(x^T B y).
Quadratic forms use the basis binomial(x_i, 2), x_i x_j (i < j) and x_i, so
they are integer valued on Z^n and their polarization can be any symmetric
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .alternating import AltMat
from .cyclic_ring import canonical
from .matrices import IntMat, det_int, mat_mul, transpose

__all__ = [
    "BiCocycle",
    "QuadraticForm",
    "H2Descriptor",
    "commutator_form",
    "alternating_section",
    "polarize",
    "cohomologous",
    "cocycle_condition",
    "h2_structure",
]


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _reduce(rows, m: int) -> IntMat:
    return tuple(tuple(canonical(int(x), m) for x in r) for r in rows)


@dataclass(frozen=True)
class BiCocycle:
    n: int
    m: int
    B: IntMat

    def __post_init__(self):
        if len(self.B) != self.n or any(len(r) != self.n for r in self.B):
            raise ValueError("exponent matrix has the wrong shape")
        object.__setattr__(self, "B", _reduce(self.B, self.m))

    def exponent(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Exponent of q in f(x, y)."""
        val = sum(x[i] * self.B[i][j] * y[j] for i in range(self.n) for j in range(self.n))
        return canonical(val, self.m)

    def __add__(self, other: "BiCocycle") -> "BiCocycle":
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError("shape or modulus mismatch")
        return BiCocycle(self.n, self.m, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.B, other.B)))

    def pullback(self, phi: Sequence[Sequence[int]]) -> "BiCocycle":
        """(phi^* f)(x, y) = f(phi x, phi y)."""
        return BiCocycle(self.n, self.m, mat_mul(mat_mul(transpose(phi), self.B), phi, self.m))


@dataclass(frozen=True)
class QuadraticForm:
    """x -> sum a_i C(x_i,2) + sum_{i<j} b_ij x_i x_j + sum c_i x_i, exponents mod m."""

    n: int
    m: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != self.n or len(self.c) != self.n or len(self.b) != len(_pairs(self.n)):
            raise ValueError("coefficient vectors have the wrong length")
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, tuple(canonical(int(x), self.m)
                                                 for x in getattr(self, name)))

    @classmethod
    def zero(cls, n: int, m: int) -> "QuadraticForm":
        return cls(n, m, (0,) * n, (0,) * len(_pairs(n)), (0,) * n)

    @classmethod
    def from_symmetric(cls, S: Sequence[Sequence[int]], m: int,
                       c: Optional[Sequence[int]] = None) -> "QuadraticForm":
        """The form with polarization S and linear part c (default 0)."""
        n = len(S)
        return cls(n, m, tuple(S[i][i] for i in range(n)),
                   tuple(S[i][j] for i, j in _pairs(n)),
                   tuple(c) if c is not None else (0,) * n)

    def b_matrix(self) -> dict[tuple[int, int], int]:
        return dict(zip(_pairs(self.n), self.b))

    def __call__(self, x: Sequence[int]) -> int:
        val = sum(a * (xi * (xi - 1) // 2) for a, xi in zip(self.a, x))
        val += sum(b * x[i] * x[j] for (i, j), b in zip(_pairs(self.n), self.b))
        val += sum(c * xi for c, xi in zip(self.c, x))
        return canonical(val, self.m)

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError("shape or modulus mismatch")
        return QuadraticForm(self.n, self.m,
                             tuple(x + y for x, y in zip(self.a, other.a)),
                             tuple(x + y for x, y in zip(self.b, other.b)),
                             tuple(x + y for x, y in zip(self.c, other.c)))

    def __neg__(self) -> "QuadraticForm":
        return QuadraticForm(self.n, self.m, tuple(-x for x in self.a),
                             tuple(-x for x in self.b), tuple(-x for x in self.c))

    def compose_linear(self, phi: Sequence[Sequence[int]]) -> "QuadraticForm":
        """The form x -> Q(phi x), re-expressed in the standard basis."""
        S = polarize(self)
        S2 = mat_mul(mat_mul(transpose(phi), S), phi, self.m)
        cols = transpose(phi)
        c2 = tuple(self(col) for col in cols)
        return QuadraticForm.from_symmetric(S2, self.m, c2)

    def without_linear(self) -> "QuadraticForm":
        return QuadraticForm(self.n, self.m, self.a, self.b, (0,) * self.n)

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "c": list(self.c)}


def commutator_form(f: BiCocycle) -> AltMat:
    """lambda_f = B - B^T as an alternating matrix."""
    n, m = f.n, f.m
    return AltMat(n, m, tuple(f.B[i][j] - f.B[j][i] for i, j in _pairs(n)))


def alternating_section(eta: AltMat) -> BiCocycle:
    """Cocycle whose exponent matrix is the strictly lower part of eta."""
    n, m = eta.n, eta.m
    full = eta.full()
    B = tuple(tuple(full[i][j] if i > j else 0 for j in range(n)) for i in range(n))
    return BiCocycle(n, m, B)


def polarize(chi: QuadraticForm) -> IntMat:
    n = chi.n
    S = [[0] * n for _ in range(n)]
    for i in range(n):
        S[i][i] = chi.a[i]
    for (i, j), b in zip(_pairs(n), chi.b):
        S[i][j] = S[j][i] = b
    return tuple(tuple(r) for r in S)


def _difference(f1: BiCocycle, f2: BiCocycle) -> IntMat:
    return tuple(tuple(canonical(x - y, f1.m) for x, y in zip(r2, r1))
                 for r1, r2 in zip(f1.B, f2.B))


def cohomologous(f1: BiCocycle, f2: BiCocycle) -> Optional[QuadraticForm]:
    """A form chi with f2 = f1 * delta(chi), or ``None`` if the classes differ.

    delta(chi)(x, y) = chi(x + y) - chi(x) - chi(y) is the polarization of chi,
    so chi is read off the symmetric difference T = B2 - B1.  The linear part,
    which delta kills, is set to zero.
    """
    if (f1.n, f1.m) != (f2.n, f2.m):
        raise ValueError("shape or modulus mismatch")
    T = _difference(f1, f2)
    n = f1.n
    if any(T[i][j] != T[j][i] for i in range(n) for j in range(i + 1, n)):
        return None
    return QuadraticForm.from_symmetric(T, f1.m)


def cocycle_condition(f: BiCocycle, phi: Sequence[Sequence[int]], chi: QuadraticForm) -> bool:
    """Whether phi^* f / f equals the coboundary of chi."""
    if det_int(phi) not in (1, -1):
        raise ValueError("phi must be invertible over Z")
    n, m = f.n, f.m
    M = _difference(f, f.pullback(phi))
    if any(M[i][j] != M[j][i] for i in range(n) for j in range(i + 1, n)):
        return False
    S = polarize(chi)
    return all(canonical(M[i][j] - S[i][j], m) == 0 for i in range(n) for j in range(n))


@dataclass(frozen=True)
class H2Descriptor:
    """Orders of the cyclic factors of H^2; 0 encodes an infinite cyclic factor."""

    ext: tuple[tuple[int, int], ...]
    alt: tuple[tuple[tuple[int, int], int], ...]

    def to_json(self) -> dict:
        return {
            "ext_ab": [{"index": i, "order": o} for i, o in self.ext],
            "alt": [{"pair": list(p), "order": o} for p, o in self.alt],
        }


def _cyclic_torsion_order(d: int, z0: int) -> int:
    """Order of the d-torsion Z[d] of a cyclic group of order z0 (0 = infinite)."""
    if d == 0:
        return z0
    if z0 == 0:
        return 1
    return gcd(d, z0)


def h2_structure(gamma: Sequence[int], z_order: int) -> H2Descriptor:
    """Factor orders of Ext(Gamma, Z) + Alt^2(Gamma, Z) for Gamma = sum Z/(m_i).

    Uses gcd(m, 0) = m; a factor of order 0 is infinite cyclic.
    """
    if z_order < 0 or any(x < 0 for x in gamma):
        raise ValueError("orders must be non-negative")
    ext = tuple((i, gcd(mi, z_order) if z_order else mi)
                for i, mi in enumerate(gamma) if mi != 0)
    alt = tuple(((i, j), _cyclic_torsion_order(gcd(gamma[i], gamma[j]), z_order))
                for i, j in _pairs(len(gamma)))
    return H2Descriptor(ext, alt)
