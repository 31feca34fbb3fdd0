# %% [markdown]
# # Closed forms against exhaustive search
#
# `lambda_cyclic` evaluates the divisor formula for Z_n; `max_sum_free`
# finds the largest (k, l)-sum-free set by pruned exhaustive search. They
# should agree everywhere.

# %%
from fractions import Fraction

from sumfree import FiniteAbelianGroup, cyclic, lambda_cyclic, lambda_sumfree_abelian, max_sum_free

for k, l in [(1, 2), (1, 3), (2, 3), (1, 4)]:
    row = []
    for n in range(1, 19):
        formula = lambda_cyclic(k, l, n)
        oracle = max_sum_free(cyclic(n), k, l)
        assert formula.value == oracle.density
        row.append(str(formula.value))
    print(f"(k,l)=({k},{l}):", " ".join(row))

# %% [markdown]
# The per-divisor terms show where the maximum comes from.

# %%
res = lambda_cyclic(1, 3, 40)
for t in res.terms:
    print(f"d={t.d:>2}  delta={t.delta}  r={t.remainder}  term={t.value}")
print("max", res.value, "at d =", res.argmax_divisor)
print("witness", max_sum_free(cyclic(40), 1, 3).witness)

# %% [markdown]
# For k=1, l=2 there is a formula for every finite abelian group. Over
# Z_2..Z_200 it ranges between 2/7 and 1/2.

# %%
values = [lambda_cyclic(1, 2, n).value for n in range(2, 201)]
print("min", min(values), "max", max(values))
for factors in [(2, 2), (3, 3), (2, 2, 2), (5, 5)]:
    G = FiniteAbelianGroup(factors)
    line = f"{G}: formula {lambda_sumfree_abelian(G).value}"
    if G.order <= 16:
        line += f", search {max_sum_free(G, 1, 2).density}"
    print(line)
assert min(values) == Fraction(2, 7)
