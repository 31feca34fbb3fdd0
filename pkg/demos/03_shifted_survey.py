# %% [markdown]
# # The {0,1}-shifted invariant on Z_n
#
# With C = {0,1}, the shifted sumsets `kA + (k-1)C` model open arcs on the
# circle cut into n cells. The density never exceeds 1/(k+l), and reaches it
# whenever l^2 - k^2 divides n. Which other n reach it, and which n is worst?

# %%
from fractions import Fraction

from sumfree import interval_witness, survey_shifted
from sumfree.survey import shifted_argmin, write_csv

for k, l in [(1, 2), (2, 3)]:
    records = survey_shifted(k, l, 1, 30)
    bound = Fraction(1, k + l)
    hits = [r.n for r in records if r.shifted_equals_bound]
    print(f"(k,l)=({k},{l}) bound {bound}")
    print("  n reaching the bound:", hits)
    print("  smallest positive value:", shifted_argmin(records))

# %% [markdown]
# The interval witness is the cell image of the arc (k/L, l/L), L = l^2 - k^2.

# %%
for n in (3, 6, 9):
    print(n, interval_witness(1, 2, n))
print(interval_witness(2, 3, 10))

# %% [markdown]
# Records export to CSV (and JSON lines) for further analysis.

# %%
print(write_csv(survey_shifted(1, 2, 1, 8)))
