"""
Strata of the strongly regular set and their covers
===================================================

A strongly regular matrix has regular cutoffs.  Recording the Jordan type
of each cutoff as a partition gives its regular decomposition data D.  The
cover over a stratum adds an ordering of the eigenvalues at every level.
Only blocks of equal size can be swapped, which gives the deck group.
"""

# %%
from gzcover import cover, decomp, sampling

for row in decomp.atlas(3):
    print(row)

# %% [markdown]
# Sample a point in a stratum with a Jordan block at level 2 and recover the
# stratum from the matrix alone.

# %%
data = decomp.RegularDecompositionData(((1,), (2,), (1, 1, 1)))
p = sampling.sample_cover_point(3, data, seed=4)
print("stratum:", decomp.stratum_of(p.x))
print("sigma order:", decomp.sigma_order(data))

lifts = cover.lift(p.x, data)
print(len(lifts), "points over x; orderings at level 3:")
for q in lifts:
    print("  ", [f"{v:.3f}" for v in q.z[2]])

# %% [markdown]
# Deck transformations permute equal-size blocks and leave x alone.

# %%
q = cover.deck([None, None, (1, 0, 2)], lifts[0])
print(q.z[2] == (lifts[0].z[2][1], lifts[0].z[2][0], lifts[0].z[2][2]))

# %% [markdown]
# The functions q_{i,j} pair the higher cutoffs with the level-i spectral
# projectors.  On the cover they reduce to (n - i) z_{i,j}.

# %%
for i in (1, 2):
    for j in range(1, len(data.level(i)) + 1):
        print(i, j, cover.q_function(p, i, j), (3 - i) * p.z[i - 1][j - 1])

# %% [markdown]
# The lifted fields [x, P] and [x, N] span the same space as the GZ fields.

# %%
print("ranks (lifted, GZ, union):", cover.lift_span_ranks(p))
