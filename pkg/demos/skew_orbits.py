# %% [markdown]
# # Alternating forms over Z/m
#
# Smith normal forms, the SL refinement with its unit twist, and the orbit
# structure of alternating matrices under det = +-1 congruence.

# %%
from qtorus.alternating import build_N, canonical_rep, d_group, orbit_enumeration, skew_normal_form
from qtorus.matrices import RingMat, det_int, ring_inverse, sl_smith_normal_form, smith_normal_form

# %% [markdown]
# Over Z/8 the matrix diag(3, 6) has Smith form diag(1, 2): 3 is a unit and
# 6 = 2 * 3.  Under SL x SL the unit cannot be absorbed completely; it
# survives as the twist z on the last diagonal entry.

# %%
A = RingMat(8, ((3, 0), (0, 6)))
sf = smith_normal_form(A)
print("diag:", sf.diag)
assert sf.g @ A @ ring_inverse(sf.h) == sf.matrix()

B = RingMat(8, ((1, 0), (0, 3)))
sl = sl_smith_normal_form(B)
print("SL diag:", sl.diag, "z =", sl.z)

# %% [markdown]
# An alternating 4x4 matrix over Z/8 reduces to blocks h_1, h_2 with h_1 | h_2.

# %%
g = ((1, 2, 0, 1), (0, 1, 0, 0), (0, 3, 1, 0), (0, 0, 0, 1))
assert det_int(g) == 1
A = build_N([1, 2], 4, 8).act(g)
nf = skew_normal_form(A)
print("chain:", nf.h, "z:", nf.z)
assert A.act(nf.g) == nf.normal_matrix()

# %% [markdown]
# When the blocks fill the whole matrix the twist z is only defined up to
# +-D, where D collects determinants of stabilizers of N(h).  The canonical
# representative picks the smallest element of that coset.

# %%
for h in ([1, 1], [1, 2], [2, 4]):
    D = d_group(h, 4, 8)
    print(f"h={h}: D = {list(D.elements)}")
print("canonical:", canonical_rep(A).key())

# %% [markdown]
# Full enumeration for small cases: orbit sizes of 2x2 forms over Z/5 and
# 4x4 forms over Z/2.

# %%
for n, m in [(2, 5), (4, 2), (4, 3)]:
    orbits = orbit_enumeration(n, m)
    sizes = sorted(o.size for o in orbits)
    print(f"n={n} m={m}: {len(orbits)} orbits, sizes {sizes}, total {sum(sizes)}")
