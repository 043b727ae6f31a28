"""
Gelfand-Zeitlin functions, their flows and strong regularity
============================================================

The functions f_{i,j}(x) = Tr(x_i^j) on gl(n, C) Poisson commute.  Their
Hamiltonian flows conjugate x by exp(t j x_i^{j-1}) in the upper-left corner,
so they are integrated exactly rather than by an ODE solver.
"""

# %%
import numpy as np

from gzcover import gz_core, sampling

np.set_printoptions(precision=4, suppress=True)

x = np.array([[1, 1], [0, 2]], dtype=complex)
print("f_{2,2} =", gz_core.gz_function(x, 2, 2))
print("kw_map  =", gz_core.kw_map(x).levels)

# %% [markdown]
# The flow of f_{1,1} on this matrix scales the (1,2) entry by e^t.

# %%
for t in (0.0, 0.5, 1.0 + 1j):
    print(t, "\n", gz_core.gz_flow(x, 1, 1, t))

# %% [markdown]
# Brackets of all pairs at a random 4 x 4 matrix vanish to round-off.

# %%
rng = np.random.default_rng(0)
y = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
idx = gz_core.gz_indices(4)
worst = max(abs(gz_core.lie_poisson_bracket(a, b, y)) for a in idx for b in idx)
print("largest bracket:", worst)

# %% [markdown]
# Strong regularity: all differentials df_{i,j} independent.  A sampled
# strongly regular point has full Jacobian rank, and its GZ fields span an
# isotropic subspace of half the orbit dimension.

# %%
z = sampling.sample_strongly_regular(4, seed=1)
cert = gz_core.is_strongly_regular(z)
print("certificate:", cert)
print("Jacobian rank:", gz_core.phi_jacobian_rank(z), "of", 10)
print("field span rank:", gz_core.a_tangent_span(z)[1], "of", 6)
print("KKS check (max pairing, lagrangian):", gz_core.kks_isotropy_check(z))

# a diagonal matrix fails: consecutive centralizers intersect
print(gz_core.is_strongly_regular(np.diag([1.0, 2.0, 3.0])))

# %% [markdown]
# Flows preserve the Kostant-Wallach map, so they move inside a fiber.

# %%
u = z / np.linalg.norm(z)
moved = gz_core.gz_flow(gz_core.gz_flow(u, 2, 2, 0.7), 3, 1, -0.4j)
print("fiber drift:", gz_core.kw_map(moved).distance(gz_core.kw_map(u)))
