"""
Gelfand--Zeitlin functions on gl(n, C), the Kostant--Wallach map, the
Hamiltonian fields of the GZ functions and their exact flows, the
Lie--Poisson bracket and strong-regularity diagnostics.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg_core as lc
from .errors import DimensionMismatch, IndexOutOfRange, NotStronglyRegular

__all__ = [
    "GZValue",
    "StrongRegularityCertificate",
    "a_tangent_span",
    "cutoff",
    "gz_field",
    "gz_flow",
    "gz_function",
    "gz_gradient",
    "gz_indices",
    "is_strongly_regular",
    "kks_isotropy_check",
    "kw_map",
    "lie_poisson_bracket",
    "phi_jacobian_rank",
]


@dataclass(frozen=True)
class GZValue:
    """A point of C^{n(n+1)/2}: level ``i`` holds the ``i`` non-leading
    coefficients of the level-``i`` characteristic polynomial, lowest first."""

    levels: tuple

    def __post_init__(self):
        levels = tuple(np.array(c, dtype=complex).reshape(-1) for c in self.levels)
        for i, c in enumerate(levels, start=1):
            if c.shape != (i,):
                raise DimensionMismatch(f"level {i} must have {i} entries, got {c.shape[0]}")
        object.__setattr__(self, "levels", levels)

    @property
    def n(self):
        return len(self.levels)

    def flat(self):
        return np.concatenate(self.levels)

    def distance(self, other):
        """Max-norm distance to another GZValue of the same size."""
        if self.n != other.n:
            raise DimensionMismatch("GZValues of different sizes")
        return float(np.max(np.abs(self.flat() - other.flat())))

    def __eq__(self, other):
        return isinstance(other, GZValue) and self.n == other.n and np.array_equal(self.flat(), other.flat())

    def __hash__(self):
        return hash(tuple(self.flat().tolist()))


@dataclass(frozen=True)
class StrongRegularityCertificate:
    is_sreg: bool
    per_level_regular: tuple
    intersection_ranks: tuple


def _check_level(n, i):
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"level {i} outside 1..{n}")


def cutoff(x, i):
    """Upper-left ``i x i`` corner of ``x``."""
    a = lc.as_cmatrix(x)
    _check_level(a.shape[0], i)
    return a[:i, :i].copy()


def _check_pair(n, i, j, max_level=None):
    top = n if max_level is None else max_level
    if not (1 <= i <= top and 1 <= j <= i):
        raise IndexOutOfRange(f"index pair ({i}, {j}) invalid for n={n}")


def gz_indices(n, include_top=True):
    """All ``(i, j)`` with ``1 <= j <= i <= n`` (or ``i <= n - 1``)."""
    top = n if include_top else n - 1
    return [(i, j) for i in range(1, top + 1) for j in range(1, i + 1)]


def gz_function(x, i, j):
    """``Tr((x_i)^j)``."""
    a = lc.as_cmatrix(x)
    _check_pair(a.shape[0], i, j)
    return complex(np.trace(np.linalg.matrix_power(a[:i, :i], j)))


def gz_gradient(x, i, j):
    """Trace-form gradient of ``f_{i,j}``: ``j (x_i)^{j-1}`` padded to ``n x n``."""
    a = lc.as_cmatrix(x)
    n = a.shape[0]
    _check_pair(n, i, j)
    return lc.pad(j * np.linalg.matrix_power(a[:i, :i], j - 1), n)


def kw_map(x):
    """Kostant--Wallach map: characteristic-polynomial coefficients of every cutoff."""
    a = lc.as_cmatrix(x)
    return GZValue(tuple(lc.charpoly(a[:i, :i]) for i in range(1, a.shape[0] + 1)))


def gz_field(x, i, j):
    """Hamiltonian field of ``f_{i,j}`` at ``x``: ``[j x_i^{j-1}, x]``.

    Defined for ``i <= n``; the top-level fields vanish identically.
    """
    a = lc.as_cmatrix(x)
    g = gz_gradient(a, i, j)
    return g @ a - a @ g


def gz_flow(x, i, j, t):
    """Exact time-``t`` flow of :func:`gz_field`: ``Ad(exp(t j x_i^{j-1})) x``.

    The cutoff ``x_i`` is constant along the flow, so conjugation by a fixed
    group element integrates the field exactly.
    """
    a = lc.as_cmatrix(x)
    n = a.shape[0]
    _check_pair(n, i, j)
    if t == 0:
        return a.copy()
    block = lc.expm(t * j * np.linalg.matrix_power(a[:i, :i], j - 1))
    g = np.eye(n, dtype=complex)
    g[:i, :i] = block
    ginv = np.eye(n, dtype=complex)
    ginv[:i, :i] = np.linalg.inv(block)
    return g @ a @ ginv


def lie_poisson_bracket(fa, fb, x):
    """``{f_a, f_b}(x) = Tr(x [grad f_a, grad f_b])``."""
    a = lc.as_cmatrix(x)
    ga = gz_gradient(a, *fa)
    gb = gz_gradient(a, *fb)
    return complex(np.trace(a @ (ga @ gb - gb @ ga)))


def _level_intersection(lower, upper, i):
    """Dimension of ``z(x_i)`` (padded into gl(i+1)) intersected with ``z(x_{i+1})``."""
    u = np.array([lc.pad(b, i + 1).ravel() for b in lower]).T
    v = np.array([b.ravel() for b in upper]).T
    return lc.subspace_intersection_dim(u, v)


def is_strongly_regular(x, tol=lc.DEFAULT_TOL):
    """Certificate for strong regularity via regular cutoffs and trivial
    intersections of consecutive centralizers."""
    a = lc.as_cmatrix(x)
    n = a.shape[0]
    bases = [lc.centralizer_basis(a[:i, :i], tol) for i in range(1, n + 1)]
    regular = tuple(len(b) == i for i, b in enumerate(bases, start=1))
    ranks = tuple(_level_intersection(bases[i - 1], bases[i], i) for i in range(1, n))
    return StrongRegularityCertificate(all(regular) and all(r == 0 for r in ranks), regular, ranks)


def _unit(mats):
    return [m / np.linalg.norm(m) if np.linalg.norm(m) > 0 else m for m in mats]


def a_tangent_span(x, tol=lc.DEFAULT_TOL):
    """GZ fields at ``x`` for ``i <= n - 1`` and the dimension of their span.

    The rank is taken relative to the ambient scale of ``x``, so that fields
    vanishing up to round-off do not count.
    """
    a = lc.as_cmatrix(x)
    n = a.shape[0]
    fields = [gz_field(a, i, j) for i, j in gz_indices(n, include_top=False)]
    if not fields:
        return fields, 0
    scale = max(np.linalg.norm(a), 1e-300)
    grads = [np.linalg.norm(gz_gradient(a, i, j)) for i, j in gz_indices(n, include_top=False)]
    # field vectors normalized by ||grad|| * ||x|| so round-off stays below tol
    rows = [f / (g * scale) if g > 0 else f for f, g in zip(fields, grads)]
    return fields, lc.numerical_rank(rows, tol)


def kks_isotropy_check(x, tol=lc.DEFAULT_TOL):
    """Largest normalized KKS pairing among GZ fields and the Lagrangian test.

    Returns ``(max_pairing, is_lagrangian)`` where the pairing of
    ``[A, x]`` and ``[B, x]`` is ``Tr(x [A, B])`` divided by
    ``||x|| ||A|| ||B||``, and ``is_lagrangian`` compares the span dimension
    with half the orbit dimension ``n^2 - dim z(x)``.
    """
    a = lc.as_cmatrix(x)
    n = a.shape[0]
    if not is_strongly_regular(a, tol).is_sreg:
        raise NotStronglyRegular("KKS isotropy check needs a strongly regular point")
    idx = gz_indices(n, include_top=False)
    grads = [gz_gradient(a, i, j) for i, j in idx]
    xn = np.linalg.norm(a)
    worst = 0.0
    for p, ga in enumerate(grads):
        for gb in grads[p + 1:]:
            denom = xn * np.linalg.norm(ga) * np.linalg.norm(gb)
            if denom == 0:
                continue
            val = abs(np.trace(a @ (ga @ gb - gb @ ga))) / denom
            worst = max(worst, val)
    _, rank = a_tangent_span(a, tol)
    orbit_dim = n * n - len(lc.centralizer_basis(a, tol))
    return float(worst), 2 * rank == orbit_dim


def phi_jacobian_rank(x, tol=lc.DEFAULT_TOL):
    """Rank of the differentials ``df_{i,j}(x)`` for all ``1 <= j <= i <= n``.

    Each differential is normalized to unit Frobenius norm before the
    rank decision so that high powers of ``x`` do not swamp the others.
    """
    a = lc.as_cmatrix(x)
    n = a.shape[0]
    grads = [gz_gradient(a, i, j) for i, j in gz_indices(n)]
    return lc.numerical_rank(_unit(grads), tol)
