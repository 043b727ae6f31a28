"""
The Z_D action and the transporter
==================================

At every level the centralizer of z_i + e^i is a product of a torus (one
scalar per block) and a unipotent group (polynomials in the nilpotent
part).  Their product over the levels i < n acts freely on the cover and
keeps every fiber of the Kostant-Wallach map.  The transporter inverts the
action: given two points in one orbit it finds the group element.
"""

# %%
import numpy as np

from gzcover import cover, decomp, gz_core, sampling
from gzcover.cover import ZDElement

data = decomp.RegularDecompositionData(((1,), (2,), (2, 1), (3, 1)))
print("dim Z_D:", decomp.zd_dimension(data))

rng = np.random.default_rng(3)
p = sampling.sample_cover_point(4, data, seed=rng)
k = sampling.random_zd_element(data, rng, 0.5)
q = cover.zd_act(k, p)

print("moved by", np.linalg.norm(q.x - p.x))
print("fiber drift", gz_core.kw_map(q.x).distance(gz_core.kw_map(p.x)))

# %% [markdown]
# Group law: semisimple coordinates multiply, unipotent ones add.

# %%
k2 = sampling.random_zd_element(data, rng, 0.5)
lhs = cover.zd_act(k * k2, p).x
rhs = cover.zd_act(k, cover.zd_act(k2, p)).x
print("group law residual", np.linalg.norm(lhs - rhs))

# %% [markdown]
# The transporter solves a linear system level by level and recovers k.

# %%
found = cover.transporter(p, q)
print("recovered k to", found.distance(k))

# %% [markdown]
# A tiny example by hand: scaling level 1 by 2 conjugates by diag(2, 1).

# %%
pt = cover.CoverPoint([[1, 0], [1, 2]], ((1,), (1, 2)))
print(cover.zd_act(ZDElement((([2.0], []),)), pt).x)
