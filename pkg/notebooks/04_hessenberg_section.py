"""
The Hessenberg section and trivialization
=========================================

Upper Hessenberg matrices with unit subdiagonal meet every fiber of the
Kostant-Wallach map exactly once.  The matrix with prescribed cutoff
characteristic polynomials is built column by column from a recurrence
between consecutive cutoff polynomials.  On generic fibers every cover
point is then a unique Z_D translate of the Hessenberg point.
"""

# %%
import numpy as np

from gzcover import cover, decomp, gz_core, hessenberg, sampling
from gzcover.gz_core import GZValue

np.set_printoptions(precision=3, suppress=True)

c = GZValue(((-1,), (2, -3)))
print(hessenberg.phi_inverse(c))

zero = GZValue(tuple(np.zeros(i) for i in range(1, 5)))
print(hessenberg.phi_inverse(zero).real)

# %% [markdown]
# Roundtrip on random values for n = 6.

# %%
rng = np.random.default_rng(0)
c = GZValue(tuple(rng.normal(size=i) + 1j * rng.normal(size=i) for i in range(1, 7)))
x = hessenberg.phi_inverse(c)
print("roundtrip error", gz_core.kw_map(x).distance(c))
print("strongly regular:", gz_core.is_strongly_regular(x).is_sreg)

# %% [markdown]
# Trivialize a generic cover point: find k with k . (Hessenberg point) = p.

# %%
p = sampling.sample_cover_point(4, seed=7)
print("generic:", decomp.generic_counts(p.z).generic)
k, x_hess = hessenberg.trivialize(p)
base = cover.CoverPoint(x_hess, p.z, p.stratum)
print("residual", np.linalg.norm(cover.zd_act(k, base).x - p.x))
