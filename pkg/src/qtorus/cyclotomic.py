"""Exact arithmetic in the cyclotomic fields Q(zeta_M).

An element is a rational polynomial in ``zeta`` of degree below phi(M),
i.e. a residue modulo the M-th cyclotomic polynomial.  Polynomials are tuples
of coefficients, lowest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from gmpy2 import mpq

__all__ = ["cyclotomic_poly", "CycloElt", "root_of_unity", "torsion_order"]


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Division with remainder over Q (exact over Z when ``b`` is monic)."""
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1]
        if c:
            if lead != 1:
                c = mpq(c) / lead
            q[k] = c
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return _trim(q), _trim(a[: len(b) - 1])


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_M, lowest degree first."""
    if M < 1:
        raise ValueError(f"conductor must be positive, got {M}")
    num = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_poly(d))
            assert not rem
    return tuple(int(c) for c in num)


def _reduce(p: Sequence, M: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(M)
    deg = len(phi) - 1
    p = [Fraction(c) for c in p]
    for k in range(len(p) - 1, deg - 1, -1):
        c = p[k]
        if c:
            # Phi_M is monic
            for j in range(deg + 1):
                p[k - deg + j] -= c * phi[j]
    p = p[:deg] + [Fraction(0)] * max(0, deg - len(p))
    return tuple(p)


class CycloElt:
    """Element of Q(zeta_M)."""

    __slots__ = ("M", "coeffs", "_hash")

    def __init__(self, M: int, coeffs: Iterable = ()):
        self.M = M
        self.coeffs = _reduce(list(coeffs), M)
        self._hash = None

    @classmethod
    def _raw(cls, M: int, coeffs: tuple) -> "CycloElt":
        obj = cls.__new__(cls)
        obj.M = M
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_int(cls, M: int, x) -> "CycloElt":
        return cls(M, [x])

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "CycloElt") -> None:
        if self.M != other.M:
            raise ValueError(f"conductor mismatch: {self.M} vs {other.M}")

    def _coerce(self, other) -> "CycloElt":
        if isinstance(other, CycloElt):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElt(self.M, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloElt._raw(self.M, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElt._raw(self.M, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloElt(self.M, _poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloElt.from_int(self.M, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def inverse(self) -> "CycloElt":
        """Inverse via the extended Euclidean algorithm against Phi_M.

        The remainder sequence runs in gmpy2 rationals; coefficient growth
        makes ``fractions.Fraction`` several times slower here.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        r0 = [mpq(c) for c in cyclotomic_poly(self.M)]
        r1 = _trim([mpq(c.numerator, c.denominator) for c in self.coeffs])
        s0, s1 = [], [mpq(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            prod = _poly_mul(q, s1)
            width = max(len(s0), len(prod))
            s_new = [
                (s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
                for i in range(width)
            ]
            s0, s1 = s1, _trim(s_new)
        # r1 is a nonzero constant since Phi_M is irreducible
        c = r1[0]
        return CycloElt(self.M, [_to_fraction(x / c) for x in s1])

    def __eq__(self, other):
        if isinstance(other, CycloElt):
            return self.M == other.M and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.M, self.coeffs))
        return self._hash

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                coef = str(c)
                terms.append(coef if not mono else (mono if c == 1 else f"{coef}*{mono}"))
        body = " + ".join(terms) if terms else "0"
        return f"CycloElt(M={self.M}: {body})"

    def to_json(self) -> dict:
        return {
            "num": [c.numerator for c in self.coeffs],
            "den": [c.denominator for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, M: int, data: dict) -> "CycloElt":
        num, den = data["num"], data["den"]
        if len(num) != len(den):
            raise ValueError("coefficient numerator/denominator length mismatch")
        return cls(M, [Fraction(a, b) for a, b in zip(num, den)])


def root_of_unity(M: int, k: int) -> CycloElt:
    """zeta_M ** k."""
    k %= M
    return CycloElt(M, [0] * k + [1])


def torsion_order(a: CycloElt) -> int:
    """Multiplicative order of ``a``; 0 for zero or when no k <= 2M works."""
    if a.is_zero():
        return 0
    power = a
    for k in range(1, 2 * a.M + 1):
        if power.is_one():
            return k
        power = power * a
    return 0
