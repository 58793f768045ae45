"""Brute-force reference computations used by the tests.

Nothing here calls into the library: groups are enumerated element by
element and orbits are found by direct action, so agreement with the
library is a genuine cross-check.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


def units(m: int) -> list[int]:
    return [u for u in range(1, m) if gcd(u, m) == 1] if m > 1 else [0]


def det_mod(mats: np.ndarray, m: int) -> np.ndarray:
    """Exact determinants mod m of a stack of small integer matrices (Laplace)."""
    n = mats.shape[-1]
    if n == 1:
        return mats[..., 0, 0] % m
    total = np.zeros(mats.shape[:-2], dtype=np.int64)
    for j in range(n):
        minor = np.delete(np.delete(mats, 0, axis=-2), j, axis=-1)
        term = mats[..., 0, j] * det_mod(minor, m)
        total = (total + (term if j % 2 == 0 else -term)) % m
    return total


@lru_cache(maxsize=None)
def gl_elements(n: int, m: int, dets: tuple[int, ...] | None = None) -> np.ndarray:
    """All invertible n x n matrices over Z/m, optionally with restricted determinant."""
    allm = np.array(list(product(range(m), repeat=n * n)), dtype=np.int64).reshape(-1, n, n)
    d = det_mod(allm, m)
    keep = np.isin(d, units(m)) if dets is None else np.isin(d, [x % m for x in dets])
    return allm[keep]


def upper_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@lru_cache(maxsize=None)
def all_alternating(n: int, m: int) -> np.ndarray:
    pairs = upper_pairs(n)
    ups = np.array(list(product(range(m), repeat=len(pairs))), dtype=np.int64)
    full = np.zeros((len(ups), n, n), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        full[:, i, j] = ups[:, k]
        full[:, j, i] = (-ups[:, k]) % m
    return full


def alt_code(full: np.ndarray, m: int) -> np.ndarray:
    """Codes matching the row order of ``all_alternating`` (first pair most significant)."""
    n = full.shape[-1]
    code = np.zeros(full.shape[:-2], dtype=np.int64)
    for i, j in upper_pairs(n):
        code = code * m + full[..., i, j] % m
    return code


def congruence(g: np.ndarray, A: np.ndarray, m: int) -> np.ndarray:
    """g A g^T for every g (leading axis of g) and every A (leading axis of A)."""
    return np.einsum("gij,kjl,gml->gkim", g, A, g) % m


def group_orbit_labels(n: int, m: int, group: np.ndarray, chunk: int = 2048) -> np.ndarray:
    """Orbit labels of Alt_n(Z/m) under the explicit matrix group ``group``."""
    A = all_alternating(n, m)
    K = len(A)
    src, dst = [], []
    base = np.arange(K)
    for start in range(0, len(group), chunk):
        img = alt_code(congruence(group[start:start + chunk], A, m), m)
        src.append(np.broadcast_to(base, img.shape).ravel())
        dst.append(img.ravel())
    src, dst = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(K, K))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


def stabilizer_dets(N: np.ndarray, m: int, group: np.ndarray) -> set[int]:
    """Determinants of the elements g of ``group`` with g N g^T = N."""
    n = N.shape[0]
    imgs = congruence(group, N[None], m)[:, 0]
    hit = np.all(imgs.reshape(len(group), -1) == (N % m).reshape(1, -1), axis=1)
    return {int(d) for d in det_mod(group[hit], m)}


def transvection_propagation_labels(n: int, m: int) -> np.ndarray:
    """Orbit labels of Alt_n(Z/m) under transvections and diag(-1, 1, ..., 1).

    Minimum-label propagation on the full state space; these generators
    generate the determinant +-1 subgroup.
    """
    A = all_alternating(n, m)
    K = len(A)
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                e = np.eye(n, dtype=np.int64)
                e[i, j] = 1
                gens.append(e)
    s = np.eye(n, dtype=np.int64)
    s[0, 0] = m - 1
    gens.append(s)
    images = [alt_code(congruence(g[None], A, m)[0], m) for g in gens]
    labels = np.arange(K)
    while True:
        new = labels.copy()
        for img in images:
            np.minimum.at(new, img, labels)
            new = np.minimum(new, new[img])
        if np.array_equal(new, labels):
            return labels
        labels = new

