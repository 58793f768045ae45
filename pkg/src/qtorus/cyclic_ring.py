"""Arithmetic in the cyclic rings Z/(m).

Elements are plain Python ints holding the canonical residue in ``[0, m)``.
The modulus ``m = 0`` stands for the integers themselves; in that case values
are left untouched.  Infinite additive order is reported as ``0``.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

__all__ = [
    "canonical",
    "factorize",
    "is_unit",
    "additive_order",
    "p_representatives",
    "prep_of",
    "divides",
    "p_quotient",
    "unit_group",
    "unit_inverse",
    "in_p",
]


def canonical(x: int, m: int) -> int:
    if m < 0:
        raise ValueError(f"modulus must be non-negative, got {m}")
    return x % m if m else x


@lru_cache(maxsize=None)
def factorize(m: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``m >= 1`` by trial division, as (p, e) pairs."""
    if m < 1:
        raise ValueError(f"cannot factor {m}")
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def is_unit(x: int, m: int) -> bool:
    if m == 0:
        return x in (1, -1)
    return gcd(x, m) == 1


def unit_inverse(x: int, m: int) -> int:
    if m == 0:
        if x not in (1, -1):
            raise ZeroDivisionError(f"{x} is not a unit of Z")
        return x
    if m == 1:
        return 0
    return pow(x, -1, m)


def additive_order(x: int, m: int) -> int:
    """Order of ``x`` in (Z/(m), +); 0 encodes infinite order."""
    if m == 0:
        return 1 if x == 0 else 0
    return m // gcd(x, m)


@lru_cache(maxsize=None)
def _divisors(m: int) -> tuple[int, ...]:
    divs = [1]
    for p, e in factorize(m):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def p_representatives(m: int) -> list[int]:
    """The representative set P of Z/(m), ordered by additive order (descending).

    P consists of the residues of the prime-power products dividing ``m``;
    ``m`` itself reduces to ``0``.
    """
    if m <= 0:
        raise ValueError("P is only enumerated for m > 0; use prep_of for Z")
    vals = {d % m for d in _divisors(m)}
    return sorted(vals, key=lambda v: (-additive_order(v, m), v))


def in_p(x: int, m: int) -> bool:
    if m == 0:
        return x >= 0
    x = x % m
    return x == 0 or (m % x == 0)


def prep_of(x: int, m: int) -> tuple[int, int]:
    """Split ``x = u * h`` with ``h`` in P and ``u`` a unit; returns ``(h, u)``.

    For ``m > 0`` the unit is the smallest residue that works.
    """
    if m == 0:
        if x == 0:
            return 0, 1
        return abs(x), (1 if x > 0 else -1)
    x %= m
    if m == 1:
        return 0, 0
    g = gcd(x, m)
    if g == m:
        return 0, 1
    cof, step = x // g, m // g
    u = cof % step
    while gcd(u, m) != 1:
        u += step
    return g, u


def divides(a: int, b: int, m: int) -> bool:
    """Ring divisibility ``a | b``, i.e. ``bZ`` contained in ``aZ``."""
    if m == 0:
        if a == 0:
            return b == 0
        return b % a == 0
    return (b % m) % gcd(a, m) == 0


def p_quotient(h1: int, h2: int, m: int) -> int:
    """The unique ``h`` in P with ``h2 = h1 * h``, for nonzero ``h1 | h2`` in P."""
    if m == 0:
        if h1 <= 0 or h2 < 0 or h2 % h1:
            raise ValueError(f"{h1} does not divide {h2} in Z")
        return h2 // h1
    h1, h2 = h1 % m, h2 % m
    if not (in_p(h1, m) and in_p(h2, m)):
        raise ValueError("arguments must lie in P")
    if h1 == 0 or h2 == 0:
        raise ValueError("p_quotient needs nonzero P elements")
    if h2 % h1:
        raise ValueError(f"{h1} does not divide {h2} in Z/({m})")
    return h2 // h1


def unit_group(m: int) -> list[int]:
    if m <= 0:
        raise ValueError("the unit group is only enumerated for m > 0")
    if m == 1:
        return [0]
    return [u for u in range(1, m) if gcd(u, m) == 1]
