# %% [markdown]
# # Classifying quantum tori
#
# A presentation (n, m, B) defines the twisted group algebra of Z^n with
# cocycle q^(x^T B y), q of order m.  Two presentations give isomorphic
# algebras exactly when their commutator forms B - B^T are congruent.

# %%
import json

from qtorus.torus import (
    TorusElement,
    TorusPresentation,
    is_isomorphic,
    multiply,
    normal_form,
    quantum_plane,
    tensor_decomposition,
    transports,
)

# %% [markdown]
# Quantum planes y x = q x y.  Over mu_5 every nontrivial q gives the same
# algebra up to relabelling; over mu_8, q and q^3 are genuinely different.

# %%
for m, a, b in [(5, 2, 3), (8, 1, 3), (8, 1, 7)]:
    T1, T2 = quantum_plane(m, a), quantum_plane(m, b)
    ok, iso = is_isomorphic(T1, T2)
    print(f"m={m}: q^{a} vs q^{b} -> {ok}")
    if ok:
        assert transports(T1, T2, iso)

# %% [markdown]
# Multiplication of homogeneous elements picks up the cocycle.

# %%
T = quantum_plane(8)
x, y = TorusElement.delta(T, (1, 0)), TorusElement.delta(T, (0, 1))
print("x*y =", multiply(x, y).to_json())
print("y*x =", multiply(y, x).to_json())

# %% [markdown]
# A rank-4 presentation splits as a tensor product of quantum planes, possibly
# with a central Laurent factor.

# %%
T = TorusPresentation(4, 8, ((0, 2, 1, 0), (0, 0, 3, 0), (0, 0, 0, 6), (0, 0, 0, 0)))
nf = normal_form(T)
print("h:", nf.h, "z:", nf.z, "laurent rank:", nf.laurent_rank)
factors, _ = tensor_decomposition(T)
print(json.dumps([F.to_json() for F in factors]))
