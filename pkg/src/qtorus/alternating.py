"""Alternating matrices over Z and Z/(m) under the congruence action g.A = g A g^T.

Over Z/(m) the acting group is the subgroup of GL_n(Z/(m)) of matrices with
determinant +-1, which is exactly the image of GL_n(Z).  Orbits are
represented by the block matrices ``N(h_1, ..., h_s)`` with a possible unit
twist ``z`` on the last block when ``2s = n``.

Exhaustive work (D-groups, orbit enumeration) runs on the finite state space
Alt_n(Z/(m)), encoded as base-m integers of the strictly upper entries.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .cyclic_ring import canonical, p_representatives, prep_of, unit_group, unit_inverse
from .errors import DEFAULT_MAX_WORK, FeasibilityError
from .matrices import (
    IntMat,
    det_int,
    identity,
    int_inverse,
    lift_gl,
    mat_mul,
    reduce_mod,
    sigma,
    transpose,
)

__all__ = [
    "AltMat",
    "SkewNF",
    "DGroupResult",
    "Orbit",
    "CANONICAL_Z_NOTE",
    "build_N",
    "skew_normal_form_Z",
    "skew_normal_form",
    "canonical_rep",
    "d_group",
    "same_orbit",
    "orbit_enumeration",
    "conjecture_scan",
    "nonzero_chains",
]

CANONICAL_Z_NOTE = (
    "z is canonicalized to the least residue of the coset +-z*D; "
    "this choice is a convention of this library"
)


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@dataclass(frozen=True)
class AltMat:
    """Alternating n x n matrix over Z/(m), stored by its strictly upper entries."""

    n: int
    m: int
    upper: tuple[int, ...]

    def __post_init__(self):
        if len(self.upper) != self.n * (self.n - 1) // 2:
            raise ValueError("wrong number of upper entries")
        object.__setattr__(self, "upper", tuple(canonical(x, self.m) for x in self.upper))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]], m: int) -> "AltMat":
        n = len(rows)
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("matrix must be square")
            if canonical(rows[i][i], m):
                raise ValueError("diagonal of an alternating matrix must vanish")
            for j in range(i + 1, n):
                if canonical(rows[i][j] + rows[j][i], m):
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not negatives")
        return cls(n, m, tuple(rows[i][j] for i, j in _pairs(n)))

    def full(self) -> IntMat:
        """Full matrix with canonical residues."""
        M = [[0] * self.n for _ in range(self.n)]
        for (i, j), x in zip(_pairs(self.n), self.upper):
            M[i][j] = x
            M[j][i] = canonical(-x, self.m)
        return tuple(tuple(r) for r in M)

    def lift(self) -> IntMat:
        """Alternating integer matrix with upper entries in [0, m)."""
        M = [[0] * self.n for _ in range(self.n)]
        for (i, j), x in zip(_pairs(self.n), self.upper):
            M[i][j], M[j][i] = x, -x
        return tuple(tuple(r) for r in M)

    def act(self, g: Sequence[Sequence[int]]) -> "AltMat":
        """g A g^T."""
        full = mat_mul(mat_mul(g, self.lift()), transpose(g), self.m)
        return AltMat(self.n, self.m, tuple(full[i][j] for i, j in _pairs(self.n)))

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "rows": [list(r) for r in self.full()]}


def build_N(h: Sequence[int], n: int, m: int = 0) -> AltMat:
    if 2 * len(h) > n:
        raise ValueError(f"{len(h)} blocks do not fit in dimension {n}")
    M = [[0] * n for _ in range(n)]
    for k, x in enumerate(h):
        M[2 * k][2 * k + 1] = x
        M[2 * k + 1][2 * k] = -x
    return AltMat.from_matrix(M, m)


@dataclass(frozen=True)
class SkewNF:
    """Orbit data: ``g A g^T = N(h_1, ..., h_{s-1}, z*h_s)`` with ``g`` in GL_n(Z)."""

    n: int
    m: int
    h: tuple[int, ...]
    z: int
    g: IntMat

    @property
    def s(self) -> int:
        return len(self.h)

    def normal_matrix(self) -> AltMat:
        h = list(self.h)
        if h:
            h[-1] = canonical(self.z * h[-1], self.m) if self.m else self.z * h[-1]
        return build_N(h, self.n, self.m)

    def key(self) -> tuple:
        return (self.n, self.m, self.h, self.z)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "s": self.s, "h": list(self.h), "z": self.z,
                "g": [list(r) for r in self.g]}


# --- integer skew normal form ------------------------------------------------

def skew_normal_form_Z(A: AltMat) -> SkewNF:
    """Congruent pivot-gcd reduction over Z."""
    if A.m != 0:
        raise ValueError("skew_normal_form_Z expects an integer matrix (m = 0)")
    h, G = _skew_reduce(A.lift())
    return SkewNF(A.n, 0, tuple(h), 1, G)


def _skew_reduce(X0: IntMat) -> tuple[list[int], IntMat]:
    n = len(X0)
    X = [list(r) for r in X0]
    G = [list(r) for r in identity(n)]

    def swap(i, j):
        if i == j:
            return
        X[i], X[j] = X[j], X[i]
        for r in X:
            r[i], r[j] = r[j], r[i]
        G[i], G[j] = G[j], G[i]

    def add(i, j, k):  # row_i += k row_j, col_i += k col_j
        if not k:
            return
        X[i] = [a + k * b for a, b in zip(X[i], X[j])]
        for r in X:
            r[i] += k * r[j]
        G[i] = [a + k * b for a, b in zip(G[i], G[j])]

    chain = []
    t = 0
    while t + 1 < n:
        cands = [(abs(X[i][j]), i, j) for i in range(t, n) for j in range(i + 1, n) if X[i][j]]
        if not cands:
            break
        _, i, j = min(cands)
        swap(t, i)
        if j == t:
            j = i
        swap(t + 1, j)
        if X[t][t + 1] < 0:
            swap(t, t + 1)
        p = X[t][t + 1]
        dirty = False
        for k in range(t + 2, n):
            add(k, t + 1, -(X[t][k] // p))
            add(k, t, X[t + 1][k] // p)
            dirty = dirty or bool(X[t][k] or X[t + 1][k])
        if dirty:
            continue
        bad = next(((a, b) for a in range(t + 2, n) for b in range(a + 1, n) if X[a][b] % p),
                   None)
        if bad is not None:
            add(t, bad[0], 1)
            continue
        chain.append(p)
        t += 2
    return chain, tuple(tuple(r) for r in G)


# --- normal form over Z/(m) ----------------------------------------------------

def skew_normal_form(A: AltMat) -> SkewNF:
    """A normal form in the orbit of ``A``; ``z`` is not yet canonical."""
    m, n = A.m, A.n
    if m == 0:
        return skew_normal_form_Z(A)
    if m < 0:
        raise ValueError("modulus must be non-negative")
    chain, G = _skew_reduce(A.lift())
    h, units = [], []
    for x in chain:
        hx, u = prep_of(x, m)
        if hx == 0:
            break
        h.append(hx)
        units.append(u)
    s = len(h)
    # diagonal absorption: scale the first vector of block i by u_i^-1 and put
    # the product of the u_i on the last coordinate, giving determinant 1
    scale = [1] * n
    w = 1
    for k, u in enumerate(units):
        scale[2 * k] = unit_inverse(u, m)
        w = (w * u) % m
    scale[n - 1] = (scale[n - 1] * w) % m
    z = w if 2 * s == n else 1
    d = tuple(tuple(scale[i] if i == j else 0 for j in range(n)) for i in range(n))
    g = lift_gl(reduce_mod(mat_mul(d, G, m), m)) if n else ()
    return SkewNF(n, m, tuple(h), z % m if m > 1 else z, g)


# --- finite state space of Alt_n(Z/(m)) -----------------------------------------

@dataclass
class _AltSpace:
    n: int
    m: int
    pairs: list
    size: int
    powers: np.ndarray
    gen_mats: list
    gen_images: list


def _space_size(n: int, m: int) -> int:
    return m ** (n * (n - 1) // 2)


def _check_space(n: int, m: int, ngens: int, max_work: int, what: str) -> None:
    work = _space_size(n, m) * max(ngens, 1)
    if work > max_work:
        raise FeasibilityError(what, work, max_work)


def _transvections(n: int) -> list[IntMat]:
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                out.append(tuple(tuple(int(r == c) + int((r, c) == (i, j)) for c in range(n))
                                 for r in range(n)))
    return out


def encode(A: AltMat) -> int:
    idx, p = 0, 1
    for x in A.upper:
        idx += x * p
        p *= A.m
    return idx


def decode(idx: int, n: int, m: int) -> AltMat:
    vals = []
    for _ in range(n * (n - 1) // 2):
        vals.append(idx % m)
        idx //= m
    return AltMat(n, m, tuple(vals))


def _decode_all(space: _AltSpace) -> np.ndarray:
    idx = np.arange(space.size, dtype=np.int64)
    return (idx[:, None] // space.powers[None, :]) % space.m


@lru_cache(maxsize=16)
def _alt_space(n: int, m: int, with_sign: bool) -> _AltSpace:
    pairs = _pairs(n)
    E = len(pairs)
    size = m**E
    powers = np.array([m**k for k in range(E)], dtype=np.int64)
    gens = _transvections(n)
    if with_sign:
        gens.append(sigma(n, -1))
    space = _AltSpace(n, m, pairs, size, powers, gens, [])
    U = _decode_all(space)
    for g in gens:
        L = np.zeros((E, E), dtype=np.int64)
        for k in range(E):
            basis = AltMat(n, m, tuple(int(a == k) for a in range(E)))
            L[:, k] = basis.act(g).upper
        images = (U @ L.T) % m
        space.gen_images.append(images @ powers)
    return space


@lru_cache(maxsize=64)
def _bfs(n: int, m: int, start: int) -> tuple[np.ndarray, np.ndarray]:
    """Breadth-first search of the SL_n(Z/(m)) orbit of ``start``."""
    space = _alt_space(n, m, False)
    parent = np.full(space.size, -1, dtype=np.int64)
    pgen = np.full(space.size, -1, dtype=np.int64)
    parent[start] = start
    frontier = np.array([start], dtype=np.int64)
    while frontier.size:
        nxt = []
        for k, img in enumerate(space.gen_images):
            targets = img[frontier]
            fresh = parent[targets] < 0
            t, src = targets[fresh], frontier[fresh]
            t, first = np.unique(t, return_index=True)
            parent[t] = src[first]
            pgen[t] = k
            nxt.append(t)
        frontier = np.unique(np.concatenate(nxt)) if nxt else np.array([], dtype=np.int64)
    return parent, pgen


def _path_matrix(n: int, m: int, start: int, target: int) -> IntMat:
    """SL element g with g.start = target, read off the BFS tree."""
    space = _alt_space(n, m, False)
    parent, pgen = _bfs(n, m, start)
    if parent[target] < 0:
        raise ValueError("target is not in the orbit")
    g = identity(n)
    node = target
    while node != start:
        g = mat_mul(g, space.gen_mats[int(pgen[node])], m)
        node = int(parent[node])
    return g


# --- D-groups ----------------------------------------------------------------

@dataclass(frozen=True)
class DGroupResult:
    h: tuple[int, ...]
    n: int
    m: int
    elements: Optional[tuple[int, ...]]
    method: str
    lower: tuple[int, ...] = ()
    upper: tuple[int, ...] = ()
    witnesses: dict = field(default_factory=dict, compare=False, repr=False)

    def coset(self, z: int) -> set[int]:
        """The coset +-z*D."""
        if self.elements is None:
            raise ValueError("D is unknown (bounds-only result)")
        return {(e * z * d) % self.m for d in self.elements for e in (1, -1)}

    def to_json(self) -> dict:
        out = {"h": list(self.h), "n": self.n, "m": self.m, "method": self.method,
               "D": None if self.elements is None else list(self.elements)}
        if self.elements is None:
            out["lower"] = list(self.lower)
            out["upper"] = list(self.upper)
        return out


def _bounds(h: Sequence[int], m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    units = unit_group(m)
    hs = h[-1]
    lower = tuple(z for z in units if (z * hs - hs) % m == 0)
    upper = tuple(z for z in units if (z * z * hs - hs) % m == 0)
    return lower, upper


def _stabilizer_dets_brute(n: int, m: int, N: AltMat) -> dict[int, IntMat]:
    """All determinants of GL_n(Z/(m)) stabilizers of N, by row backtracking."""
    vecs = np.array(list(product(range(m), repeat=n)), dtype=np.int64)
    full = np.array(N.full(), dtype=np.int64)
    W = (vecs @ full) % m
    found: dict[int, IntMat] = {}

    def rec(rows: list[int]):
        k = len(rows)
        if k == n:
            g = tuple(tuple(int(x) for x in vecs[r]) for r in rows)
            d = det_int(g) % m
            if gcd(d, m) == 1 and d not in found:
                found[d] = g
            return
        mask = np.ones(len(vecs), dtype=bool)
        for i, r in enumerate(rows):
            mask &= (vecs @ W[r]) % m == (full[i][k]) % m
        for cand in np.nonzero(mask)[0]:
            rec(rows + [int(cand)])

    rec([])
    return found


@lru_cache(maxsize=256)
def _d_group_cached(h: tuple[int, ...], n: int, m: int, method: str,
                    max_work: int) -> DGroupResult:
    lower, upper = _bounds(h, m)
    N = build_N(h, n, m)
    if method == "brute-force":
        work = m ** (n * (n + 1) // 2 + n)
        if work > max_work:
            return DGroupResult(h, n, m, None, "bounds-only", lower, upper)
        wit = _stabilizer_dets_brute(n, m, N)
        return DGroupResult(h, n, m, tuple(sorted(wit)), method, lower, upper, wit)
    try:
        _check_space(n, m, n * (n - 1), max_work, "D-group orbit graph")
    except FeasibilityError:
        return DGroupResult(h, n, m, None, "bounds-only", lower, upper)
    start = encode(N)
    parent, _ = _bfs(n, m, start)
    wit = {}
    for t in unit_group(m):
        tinv = unit_inverse(t, m)
        target = N.act(sigma(n, tinv))
        idx = encode(target)
        if parent[idx] >= 0:
            gp = _path_matrix(n, m, start, idx)
            wit[t] = mat_mul(sigma(n, t), gp, m)
    return DGroupResult(h, n, m, tuple(sorted(wit)), method, lower, upper, wit)


def d_group(h: Sequence[int], n: int, m: int, method: str = "orbit-graph",
            max_work: int = DEFAULT_MAX_WORK) -> DGroupResult:
    """Determinants of stabilizers of N(h) in GL_n(Z/(m)).

    ``method`` is ``"orbit-graph"`` (a stabilizer of determinant t exists iff
    N(h_1, ..., t*h_s) lies in the SL_n-orbit of N(h)) or ``"brute-force"``.
    If the work estimate exceeds ``max_work`` a bounds-only result carrying
    {z : z h_s = h_s} and {z : z^2 h_s = h_s} is returned instead.
    """
    if m <= 0:
        raise ValueError("d_group needs m > 0")
    h = tuple(canonical(x, m) for x in h)
    if not h or any(x == 0 for x in h):
        raise ValueError("the chain must be nonempty and nonzero")
    if 2 * len(h) > n:
        raise ValueError("chain too long for the dimension")
    if method not in ("orbit-graph", "brute-force"):
        raise ValueError(f"unknown method {method!r}")
    if 2 * len(h) < n:
        units = tuple(unit_group(m))
        lower, upper = _bounds(h, m)
        wit = {t: sigma(n, t) for t in units}
        return DGroupResult(h, n, m, units, "free-block", lower, upper, wit)
    return _d_group_cached(h, n, m, method, max_work)


# --- canonical representatives -----------------------------------------------

def canonical_rep(A: AltMat, max_work: int = DEFAULT_MAX_WORK) -> SkewNF:
    """Normal form with canonical z (least residue of +-z*D when 2s = n)."""
    nf = skew_normal_form(A)
    m, n = A.m, A.n
    if m == 0 or 2 * nf.s < n or nf.s == 0:
        return nf
    D = d_group(nf.h, n, m, max_work=max_work)
    if D.elements is None:
        raise FeasibilityError("canonical z (D-group)", _space_size(n, m), max_work)
    w = min(D.coset(nf.z))
    if w == nf.z:
        return nf
    # w = eps * z * t with t in D; a stabilizer of determinant t^-1 moves z to w
    t = next(d for d in D.elements if (w - nf.z * d) % m == 0 or (w + nf.z * d) % m == 0)
    stab = D.witnesses[unit_inverse(t, m)]
    g1 = mat_mul(mat_mul(sigma(n, w), stab, m), sigma(n, unit_inverse(nf.z, m)), m)
    g = mat_mul(lift_gl(reduce_mod(g1, m)), nf.g)
    return SkewNF(n, m, nf.h, w, g)


def same_orbit(A: AltMat, B: AltMat,
               max_work: int = DEFAULT_MAX_WORK) -> tuple[bool, Optional[IntMat]]:
    """Orbit equality, with an integer witness g satisfying g A g^T = B."""
    if (A.n, A.m) != (B.n, B.m):
        raise ValueError("dimension or modulus mismatch")
    ca, cb = canonical_rep(A, max_work), canonical_rep(B, max_work)
    if ca.key() != cb.key():
        return False, None
    return True, mat_mul(int_inverse(cb.g), ca.g)


# --- exhaustive orbit enumeration -------------------------------------------

@dataclass
class Orbit:
    rep: SkewNF
    size: int
    member_codes: np.ndarray

    def members(self) -> list[AltMat]:
        return [decode(int(c), self.rep.n, self.rep.m) for c in self.member_codes]


def orbit_enumeration(n: int, m: int, max_work: int = DEFAULT_MAX_WORK) -> list[Orbit]:
    """Partition Alt_n(Z/(m)) into orbits of the determinant +-1 subgroup."""
    if m <= 0:
        raise ValueError("orbit enumeration needs m > 0")
    _check_space(n, m, n * (n - 1) + 1, max_work, "orbit enumeration")
    space = _alt_space(n, m, True)
    src = np.tile(np.arange(space.size, dtype=np.int64), len(space.gen_images))
    dst = np.concatenate(space.gen_images)
    graph = csr_matrix((np.ones(src.size, dtype=np.int8), (src, dst)),
                       shape=(space.size, space.size))
    _, labels = connected_components(graph, directed=True, connection="weak")
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    out = []
    for codes in np.split(order, bounds):
        rep = canonical_rep(decode(int(codes[0]), n, m), max_work)
        out.append(Orbit(rep, int(codes.size), codes))
    out.sort(key=lambda o: (o.rep.s, [-x for x in o.rep.h], o.rep.z))
    return out


# --- Conjecture scanner ---------------------------------------------------------

def nonzero_chains(s: int, m: int) -> list[tuple[int, ...]]:
    """All chains h_1 | ... | h_s of nonzero elements of P."""
    P = sorted(x for x in p_representatives(m) if x != 0)
    out: list[tuple[int, ...]] = [()]
    for _ in range(s):
        out = [c + (x,) for c in out for x in P if not c or x % c[-1] == 0]
    return out


def _scan_one(chain: tuple[int, ...], n: int, m: int, max_work: int) -> dict:
    D = d_group(chain, n, m, max_work=max_work)
    hs = chain[-1]
    entry = {"chain": list(chain), "equal_h": len(set(chain)) == 1}
    if D.elements is None:
        entry.update({"holds": None, "D": None, "method": D.method})
    else:
        entry.update({
            "holds": all((z * hs - hs) % m == 0 for z in D.elements),
            "D": list(D.elements),
            "method": D.method,
        })
    return entry


def conjecture_scan(n: int, m: int, chains: Optional[Iterable[Sequence[int]]] = None,
                    threads: int = 1, max_work: int = DEFAULT_MAX_WORK) -> dict:
    """Check D*h_s = {h_s} on every nonzero chain with 2s = n.

    The output is evidence only: ``holds`` is ``None`` where D was out of budget.
    """
    if n % 2:
        raise ValueError("the scan needs 2s = n, so n must be even")
    if m <= 0:
        raise ValueError("the scan needs m > 0")
    todo = [tuple(canonical(x, m) for x in c) for c in chains] if chains is not None \
        else nonzero_chains(n // 2, m)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: _scan_one(c, n, m, max_work), todo))
    else:
        results = [_scan_one(c, n, m, max_work) for c in todo]
    return {"n": n, "m": m, "status": "experimental evidence", "conjecture": results}


def orbit_report(n: int, m: int, max_work: int = DEFAULT_MAX_WORK,
                 with_conjecture: bool = True, threads: int = 1) -> dict:
    orbits = orbit_enumeration(n, m, max_work)
    out = {
        "n": n,
        "m": m,
        "convention": CANONICAL_Z_NOTE,
        "orbits": [{"h": list(o.rep.h), "z": o.rep.z, "size": o.size} for o in orbits],
    }
    if with_conjecture and n % 2 == 0 and m > 1:
        out["conjecture"] = conjecture_scan(n, m, threads=threads,
                                            max_work=max_work)["conjecture"]
    return out
