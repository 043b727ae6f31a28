"""
The Hessenberg slice b + e (upper triangular plus unit subdiagonal):
membership, the inverse of the Kostant--Wallach map on the slice, and the
Z_D trivialization of the generic part of the cover.
"""

import numpy as np

from . import cover, decomp, gz_core, linalg_core as lc
from .errors import NotGeneric

__all__ = ["hessenberg_section", "is_hessenberg", "phi_inverse", "trivialize"]


def is_hessenberg(x, tol=lc.DEFAULT_TOL):
    """Unit subdiagonal and zeros below it, up to absolute ``tol``."""
    a = lc.as_cmatrix(x)
    n = a.shape[0]
    for r in range(n):
        for c in range(r):
            want = 1.0 if r == c + 1 else 0.0
            if abs(a[r, c] - want) > tol:
                return False
    return True


def phi_inverse(c):
    """The unique Hessenberg matrix whose cutoff characteristic polynomials are ``c``.

    With ``p_0 = 1`` and ``p_i`` the level-``i`` polynomial, a unit-subdiagonal
    Hessenberg matrix satisfies

        p_{i+1}(t) = (t - x[i+1, i+1]) p_i(t) - sum_{k<=i} x[k, i+1] p_{k-1}(t),

    so the new column is read off by expanding ``p_{i+1} - t p_i`` in the
    monic basis ``p_0, ..., p_i`` (back-substitution from the top degree).
    """
    if not isinstance(c, gz_core.GZValue):
        c = gz_core.GZValue(tuple(c))
    n = c.n
    x = np.zeros((n, n), dtype=complex)
    for r in range(1, n):
        x[r, r - 1] = 1.0
    # polys[k]: ascending coefficients of p_k including the leading 1
    polys = [np.array([1.0 + 0j])]
    for i in range(n):
        polys.append(np.append(c.levels[i], 1.0))
    for i in range(n):
        # column i (0-based) of x fixes p_{i+1} from p_0..p_i
        rem = polys[i + 1].copy()
        rem[1:] -= polys[i]
        rem = rem[: i + 1]
        for d in range(i, -1, -1):
            coef = rem[d]
            rem[: d + 1] -= coef * polys[d]
            if d == i:
                x[i, i] = -coef
            else:
                x[d, i] = -coef
    return x


def hessenberg_section(x):
    """The Hessenberg matrix in the Kostant--Wallach fiber of ``x``."""
    return phi_inverse(gz_core.kw_map(x))


def trivialize(point, tol=lc.DEFAULT_TOL):
    """Write a generic cover point as ``k . (Hessenberg point)``.

    Returns ``(k, x_hess)`` with ``zd_act(k, lift of x_hess with the same
    eigenvalue orderings) == point``.
    """
    if not decomp.generic_counts(point.z).generic:
        raise NotGeneric("trivialization is only defined on the generic locus")
    x_hess = hessenberg_section(point.x)
    base = cover.CoverPoint(x_hess, point.z, point.stratum)
    k = cover.transporter(base, point, tol)
    return k, x_hess
