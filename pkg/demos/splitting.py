# %% [markdown]
# # Lifting SL2(Z) into graded automorphisms
#
# Graded automorphisms of the quantum plane A_q project onto SL2(Z) (GL2(Z)
# when q^2 = 1).  Choosing scalars on the generator lifts gives a
# homomorphic section exactly when the relations g1^4 = g2^6 = 1 and
# g1^2 = g2^3 hold.

# %%
from qtorus.automorphisms import (
    ConstraintError,
    ScalarElt,
    SplittingParams,
    splitting,
    verify_presentation,
    z1_count,
)
from qtorus.torus import quantum_plane

# %% [markdown]
# With free symbols r1, r2 the admissible s1, s2 are forced up to a sign.

# %%
m = 8
T = quantum_plane(m)
r1, r2 = ScalarElt.symbol("r1", 8), ScalarElt.symbol("r2", 8)
params = SplittingParams.sl2(m, r1, r2)
print("s1 =", params.s1, " s2 =", params.s2)
report = verify_presentation(splitting(T, params))
for rel in report["relations"]:
    print(f"  {rel['name']:<12} {'ok' if rel['pass'] else 'FAIL'}")

# %% [markdown]
# Naive choices fail and the report shows which relation breaks.

# %%
one = ScalarElt.one(8)
bad = SplittingParams("SL2", m, one, one, one, one)
try:
    splitting(T, bad)
except ConstraintError as exc:
    print("rejected:", exc)
report = verify_presentation(splitting(T, bad, check=False))
print([r["name"] for r in report["relations"] if not r["pass"]])

# %% [markdown]
# Counting all sections: for SL2 the count is M^2 times the 2-torsion of mu_M.

# %%
for M in (2, 4, 8, 16):
    print(f"M={M}: {z1_count('SL2', M)} sections")
print("GL2 at m=2:", z1_count("GL2", 2))
