"""Square matrices over Z and Z/(m).

Matrices are stored as tuples of row tuples of ints.  The plain-int helpers
(``mat_mul``, ``det_int``, ...) work on any nested sequence and are shared by
the higher modules; :class:`RingMat` adds a modulus and canonical residues.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .cyclic_ring import canonical, is_unit, prep_of, unit_inverse

__all__ = [
    "IntMat",
    "RingMat",
    "SmithForm",
    "identity",
    "mat_mul",
    "transpose",
    "det_int",
    "int_inverse",
    "reduce_mod",
    "ring_inverse",
    "det",
    "is_gl",
    "is_sl",
    "lift_gl",
    "integer_smith",
    "smith_normal_form",
    "sl_smith_normal_form",
    "determinantal_divisors",
    "sigma",
]

IntMat = tuple[tuple[int, ...], ...]


def _freeze(rows: Sequence[Sequence[int]]) -> IntMat:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def sigma(n: int, z: int) -> IntMat:
    """diag(1, ..., 1, z)."""
    return tuple(
        tuple((z if i == n - 1 else 1) if i == j else 0 for j in range(n)) for i in range(n)
    )


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], m: int = 0) -> IntMat:
    cols = list(zip(*b))
    out = []
    for row in a:
        new = [sum(x * y for x, y in zip(row, col)) for col in cols]
        out.append(tuple(v % m for v in new) if m else tuple(new))
    return tuple(out)


def transpose(a: Sequence[Sequence[int]]) -> IntMat:
    return tuple(tuple(r) for r in zip(*a)) if a else ()


def det_int(a: Sequence[Sequence[int]]) -> int:
    """Integer determinant by Bareiss fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    M = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def int_inverse(a: Sequence[Sequence[int]]) -> IntMat:
    """Inverse of a unimodular integer matrix."""
    n = len(a)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise ValueError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    inv = [row[n:] for row in M]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


@dataclass(frozen=True)
class RingMat:
    """n x n matrix over Z/(m); ``m = 0`` is Z."""

    m: int
    rows: IntMat

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", _freeze(
            [[canonical(x, self.m) for x in r] for r in self.rows]))

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, m: int) -> "RingMat":
        return cls(m, identity(n))

    def __matmul__(self, other: "RingMat") -> "RingMat":
        if self.m != other.m or self.n != other.n:
            raise ValueError("modulus or dimension mismatch")
        return RingMat(self.m, mat_mul(self.rows, other.rows, self.m))

    def T(self) -> "RingMat":
        return RingMat(self.m, transpose(self.rows))

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "RingMat":
        n, m, rows = int(data["n"]), int(data["m"]), data["rows"]
        if m < 0:
            raise ValueError("modulus must be non-negative")
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"rows do not form a {n}x{n} matrix")
        return cls(m, _freeze(rows))


def ring_inverse(a: RingMat) -> RingMat:
    """Inverse over Z/(m) via the adjugate (for m = 0 the matrix must be unimodular)."""
    n, m = a.n, a.m
    if m == 0:
        return RingMat(0, int_inverse(a.rows))
    d = det(a)
    if not is_unit(d, m):
        raise ValueError("matrix is not invertible")
    dinv = unit_inverse(d, m)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[a.rows[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            adj[i][j] = (-1) ** (i + j) * det_int(minor) * dinv
    return RingMat(m, _freeze(adj))


def reduce_mod(a: Sequence[Sequence[int]], m: int) -> RingMat:
    return RingMat(m, _freeze(a))


def det(a: RingMat) -> int:
    return canonical(det_int(a.rows), a.m)


def is_gl(a: RingMat) -> bool:
    return is_unit(det(a), a.m)


def is_sl(a: RingMat) -> bool:
    return det(a) == canonical(1, a.m)


# --- lifting along Z -> Z/(m) ------------------------------------------------

def _transvection(n: int, i: int, j: int, k: int) -> IntMat:
    """Identity plus k at (i, j): left multiplication adds k * row j to row i."""
    return tuple(
        tuple(int(r == c) + (k if (r, c) == (i, j) else 0) for c in range(n)) for r in range(n)
    )


def _sl_to_transvections(g: list[list[int]], m: int) -> list[tuple[int, int, int]]:
    """Row operations (i, j, k), meaning row_i += k * row_j, that reduce ``g`` to I mod m."""
    n = len(g)
    ops: list[tuple[int, int, int]] = []

    def op(i, j, k):
        k %= m
        if k:
            ops.append((i, j, k))
            g[i] = [(x + k * y) % m for x, y in zip(g[i], g[j])]

    for c in range(n):
        # Euclid on the column below the diagonal
        while True:
            nz = [r for r in range(c, n) if g[r][c]]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda r: (g[r][c], r))
            for r in nz:
                if r != p:
                    op(r, p, -(g[r][c] // g[p][c]))
        nz = [r for r in range(c, n) if g[r][c]]
        if not nz:
            raise ValueError("matrix is not invertible")
        p = nz[0]
        if p != c:
            op(c, p, 1)
            op(p, c, -1)
        a = g[c][c]
        if a != 1:
            if c == n - 1:
                raise ValueError("determinant is not 1")
            u = unit_inverse(a, m)
            op(c + 1, c, 1)
            op(c, c + 1, u - 1)
            op(c + 1, c, -g[c + 1][c])
        for r in range(n):
            if r != c:
                op(r, c, -g[r][c])
    return ops


def lift_gl(g: RingMat) -> IntMat:
    """Integer matrix of determinant +-1 reducing to ``g`` (det g must be +-1 mod m)."""
    m, n = g.m, g.n
    if m <= 0:
        raise ValueError("lift_gl needs m > 0")
    if m == 1:
        return identity(n)
    d = det(g)
    if d == 1 % m:
        s = 1
    elif d == (-1) % m:
        s = -1
    else:
        raise ValueError(f"det {d} is not +-1 mod {m}; no preimage in GL_n(Z)")
    centered = tuple(tuple(x - m if 2 * x > m else x for x in r) for r in g.rows)
    if det_int(centered) == s:
        return centered
    work = [list(r) for r in mat_mul(g.rows, sigma(n, s), m)]
    ops = _sl_to_transvections(work, m)
    out = identity(n)
    for i, j, k in ops:
        # g = E_1^-1 ... E_k^-1
        out = mat_mul(out, _transvection(n, i, j, -k if 2 * k <= m else m - k))
    out = mat_mul(out, sigma(n, s))
    assert reduce_mod(out, m) == g and det_int(out) == s
    return out


# --- Smith normal form -------------------------------------------------------

def integer_smith(a: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat, IntMat, IntMat]:
    """Integer Smith form: returns (D, U, V, V^-1) with U @ a @ V = D."""
    n = len(a)
    A = [list(r) for r in a]
    U = [list(r) for r in identity(n)]
    V = [list(r) for r in identity(n)]
    Vi = [list(r) for r in identity(n)]

    def row_add(i, j, k):  # row_i += k row_j
        A[i] = [x + k * y for x, y in zip(A[i], A[j])]
        U[i] = [x + k * y for x, y in zip(U[i], U[j])]

    def col_add(i, j, k):  # col_i += k col_j
        for M in (A, V):
            for r in M:
                r[i] += k * r[j]
        Vi[j] = [x - k * y for x, y in zip(Vi[j], Vi[i])]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    for t in range(n):
        while True:
            cands = [(abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, n) if A[i][j]]
            if not cands:
                break
            _, pi, pj = min(cands)
            row_swap(t, pi)
            col_swap(t, pj)
            p = A[t][t]
            for i in range(t + 1, n):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, n)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return _freeze(A), _freeze(U), _freeze(V), _freeze(Vi)


@dataclass(frozen=True)
class SmithForm:
    """``g @ A @ h^-1`` equals ``diag(diag[:-1] + [z * diag[-1]])``."""

    diag: tuple[int, ...]
    g: RingMat
    h: RingMat
    variant: str = "GL"
    z: int = 1

    def matrix(self) -> RingMat:
        n, m = len(self.diag), self.g.m
        entries = list(self.diag)
        if n:
            entries[-1] = canonical(self.z * entries[-1], m)
        return RingMat(m, tuple(tuple(entries[i] if i == j else 0 for j in range(n))
                                for i in range(n)))

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "diag": list(self.diag),
            "z": self.z,
            "g": self.g.to_json(),
            "h": self.h.to_json(),
        }


def smith_normal_form(a: RingMat) -> SmithForm:
    m, n = a.m, a.n
    D, U, _, Vi = integer_smith(a.rows)
    diag, units = [], []
    for i in range(n):
        h, u = prep_of(D[i][i], m)
        diag.append(h)
        units.append(u if m != 1 else 0)
    # absorb the unit parts into g
    g = [[canonical(unit_inverse(units[i], m) * x, m) for x in U[i]] for i in range(n)]
    return SmithForm(tuple(diag), RingMat(m, _freeze(g)), RingMat(m, Vi), "GL", 1)


def sl_smith_normal_form(a: RingMat) -> SmithForm:
    """SL variant: g, h of determinant 1 and the unit z on the last entry.

    Among the units giving the same last entry ``z * h_n``, the smallest residue
    is reported (z = 1 when ``h_n = 0``).
    """
    m, n = a.m, a.n
    gl = smith_normal_form(a)
    if n == 0:
        return SmithForm((), gl.g, gl.h, "SL", 1)
    dg, dh = det(gl.g), det(gl.h)
    dg_inv, dh_inv = unit_inverse(dg, m), unit_inverse(dh, m)
    g = RingMat(m, sigma(n, dg_inv)) @ gl.g
    h = RingMat(m, sigma(n, dh_inv)) @ gl.h
    z = canonical(dg_inv * dh, m)
    last = canonical(z * gl.diag[-1], m)
    if m == 0:
        z = 1 if last == gl.diag[-1] else -1
    elif m == 1:
        z = 0
    else:
        z = min(u for u in range(1, m) if gcd(u, m) == 1 and (u * gl.diag[-1] - last) % m == 0)
    return SmithForm(gl.diag, g, h, "SL", z)


def determinantal_divisors(a: RingMat) -> tuple[int, ...]:
    """d_1, ..., d_n as elements of P."""
    m, n = a.m, a.n
    out = []
    for k in range(1, n + 1):
        d = m
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                d = gcd(d, det_int([[a.rows[r][c] for c in cols] for r in rows]))
                if d == 1:
                    break
            if d == 1:
                break
        out.append(prep_of(d, m)[0])
    return tuple(out)
