"""
Counting orbits in a non-generic fiber
======================================

When consecutive levels share j_i eigenvalues, the strongly regular part
of a fiber splits into 2^(sum j_i) orbits.  At n = 2 this can be seen by
hand.  Fix x_11 = 1 and level-2 eigenvalues {1, 3}.  Then the fiber is
x = [[1, b], [c, 3]] with bc = 0.  Strong regularity excludes b = c = 0,
which leaves two components, and the transporter must fail between them.
"""

# %%
import numpy as np

from gzcover import cover, decomp
from gzcover.errors import NoSolution

data = decomp.RegularDecompositionData(((1,), (1, 1)))


def point(b, c):
    return cover.CoverPoint(np.array([[1, b], [c, 3]], dtype=complex), ((1,), (1, 3)), data)


print("predicted orbits:", decomp.generic_counts([(1,), (1, 3)]).orbit_count)

k = cover.transporter(point(0, 2.0), point(0, 0.5j))
print("within {b = 0}:", k.levels)

try:
    cover.transporter(point(0, 1.0), point(1.0, 0))
except NoSolution as exc:
    print("across components:", exc)

# %% [markdown]
# With eigenvalues {2, 3} nothing is shared.  The fiber bc = -2 is a single
# orbit, and any two of its points are related.

# %%
print("predicted orbits:", decomp.generic_counts([(1,), (2, 3)]).orbit_count)
a = cover.CoverPoint([[1, 1], [-2, 4]], ((1,), (2, 3)), data)
b = cover.CoverPoint([[1, -1j], [-2j, 4]], ((1,), (2, 3)), data)
print("transport ok:", np.allclose(cover.zd_act(cover.transporter(a, b), a).x, b.x))

# %% [markdown]
# For n = 3 the counts are reported from the formula only.

# %%
print(decomp.generic_counts([(1,), (1, 2), (2, 5, 7)]))
