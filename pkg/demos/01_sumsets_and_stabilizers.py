# %% [markdown]
# # Sumsets, stabilizers and pullbacks
#
# Subsets of a finite abelian group are bit-vectors indexed in mixed radix
# (rightmost factor fastest). This walks through the basic operations.

# %%
from sumfree import (
    FiniteAbelianGroup,
    GroupSubset,
    ProjectionSpec,
    cyclic,
    is_sum_free,
    iterated_sumset,
    parse_subset,
    pullback,
    stabilizer,
    sumset,
)

G = FiniteAbelianGroup((2, 6))
print(G, "order", G.order, "exponent", G.exponent)
print("element 7 has coordinates", G.decode(7))

# %% [markdown]
# `kA` is the k-fold Minkowski sum, not the dilation `{k*a}`.

# %%
Z7 = cyclic(7)
A = parse_subset("{2,3}", Z7)
print("A   =", A)
print("2A  =", iterated_sumset(A, 2))
print("3A  =", iterated_sumset(A, 3))
print("(1,2)-sum-free:", is_sum_free(A, 1, 2))
print("(1,3)-sum-free:", is_sum_free(A, 1, 3))

# %% [markdown]
# Stabilizers only grow along the chain A, 2A, 3A, ...

# %%
Z12 = cyclic(12)
B = parse_subset("{1,5}", Z12)
for i in range(1, 5):
    iB = iterated_sumset(B, i)
    print(f"{i}B = {iB}  stab = {stabilizer(iB)}")

# %% [markdown]
# Pulling a sum-free set back along Z_18 -> Z_6 keeps both the density and
# the sum-free property.

# %%
S = parse_subset("{1,4}", cyclic(6))
P = pullback(cyclic(18), ProjectionSpec.mod(6), S)
print("S =", S, "density", S.density(), "sum-free", is_sum_free(S, 1, 2))
print("P =", P, "density", P.density(), "sum-free", is_sum_free(P, 1, 2))

# %%
Q = pullback(G, ProjectionSpec.drop(1), GroupSubset.from_elements(cyclic(2), [1]))
print("preimage of {1} under Z_2 x Z_6 -> Z_2:", [G.decode(i) for i in Q])
print("sumset of that with itself:", sumset(Q, Q))
