# %% [markdown]
# # Compact groups T^d x M
#
# For G = I x M with a nontrivial identity component I (a torus, say) the
# answer is max(lambda(M), 1/(k+l)). Here lambda(M) comes from an exact
# search over the finite part.

# %%
from sumfree import cyclic, lambda_connected, lambda_product, max_sum_free

for n in (7, 10, 12):
    for k, l in [(1, 2), (1, 3), (2, 3)]:
        lam_M = max_sum_free(cyclic(n), k, l).density
        lam_G = lambda_product(k, l, lam_M, connected_nontrivial=True)
        print(f"T x Z_{n}, (k,l)=({k},{l}): lambda(M)={lam_M}, 1/(k+l)={lambda_connected(k, l)} -> {lam_G}")
