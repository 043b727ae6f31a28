"""
Seeded sampling of strongly regular matrices and cover points.

Points are built with exact eigenvalue data: choose ordered eigenvalue
tuples for every level, place the unique Hessenberg matrix with those cutoff
spectra, then move it off the section with a bounded Z_D element and a GZ
flow.  The eigenvalue tuples ride along, so no multiplicity has to be
recovered numerically.
"""

import numpy as np
from scipy.linalg import matrix_balance

from . import cover, decomp, gz_core, hessenberg, linalg_core as lc
from .decomp import RegularDecompositionData
from .errors import GZError, SamplingFailure

__all__ = [
    "balance",
    "random_stratum",
    "random_zd_element",
    "rescale",
    "sample_cover_point",
    "sample_eigenvalues",
    "sample_strongly_regular",
]

MAX_ATTEMPTS = 32
# eigenvalues are drawn in the unit disk with this minimum separation
MIN_GAP = 0.3
# Z_D moves applied while sampling stay within this log-scale bound
ZD_BOUND = 0.3


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _draw(rng, avoid, radius=1.0):
    for _ in range(1000):
        v = complex(*rng.uniform(-radius, radius, 2))
        if abs(v) <= radius and all(abs(v - a) >= MIN_GAP for a in avoid):
            return v
    raise SamplingFailure("could not place a separated eigenvalue")


def sample_eigenvalues(stratum, rng, shared=None):
    """Ordered eigenvalue tuples in block order.

    ``shared[i-1]`` (default 0) is the number of values level ``i`` shares
    with level ``i + 1``; all other values avoid the neighbouring levels.
    """
    rng = _rng(rng)
    n = stratum.n
    shared = tuple(shared) if shared is not None else (0,) * (n - 1)
    if len(shared) != n - 1:
        raise ValueError("need one shared count per consecutive level pair")
    levels = []
    for i in range(1, n + 1):
        r = len(stratum.level(i))
        carry = []
        if i > 1 and shared[i - 2]:
            prev = levels[-1]
            if shared[i - 2] > min(len(prev), r):
                raise SamplingFailure(f"cannot share {shared[i - 2]} values between levels {i - 1} and {i}")
            carry = list(rng.choice(len(prev), size=shared[i - 2], replace=False))
            carry = [prev[k] for k in carry]
        avoid = list(levels[-1]) if levels else []
        fresh = []
        for _ in range(r - len(carry)):
            fresh.append(_draw(rng, avoid + carry + fresh))
        values = carry + fresh
        order = rng.permutation(r)
        levels.append(tuple(values[k] for k in order))
    return tuple(levels)


def random_stratum(n, rng):
    """Uniformly chosen regular decomposition data with ``n`` levels."""
    rng = _rng(rng)
    strata = []
    for i in range(1, n + 1):
        options = list(decomp.partitions(i))
        strata.append(options[rng.integers(len(options))])
    return RegularDecompositionData(tuple(strata))


def random_zd_element(stratum, rng, bound=1.0):
    """Z_D element with ``log|s|``, ``arg s`` and the real and imaginary
    parts of every ``t`` drawn uniformly from ``[-bound, bound]``."""
    rng = _rng(rng)
    r, s, _ = decomp.zd_dimension(stratum)
    levels = []
    for i in range(stratum.n - 1):
        logs = rng.uniform(-bound, bound, r[i]) + 1j * rng.uniform(-bound, bound, r[i])
        t = rng.uniform(-bound, bound, s[i]) + 1j * rng.uniform(-bound, bound, s[i])
        levels.append((np.exp(logs), t))
    return cover.ZDElement(tuple(levels))


def balance(point):
    """Diagonal similarity that evens out row and column norms.

    Diagonal conjugation preserves every cutoff spectrum, so the eigenvalue
    tuples and the stratum are unchanged.
    """
    _, (scale, _) = matrix_balance(point.x, permute=False, separate=True)
    return point.with_x(point.x * (1.0 / scale)[:, None] * scale[None, :])


def _section_point(stratum, z):
    c = gz_core.GZValue(tuple(lc.poly_from_roots(zi, parts) for zi, parts in zip(z, stratum.strata)))
    return cover.CoverPoint(hessenberg.phi_inverse(c), z, stratum)


def rescale(point, factor):
    """The cover point ``(factor x, factor z)``; strata and strong regularity are scale invariant."""
    z = tuple(tuple(factor * v for v in zi) for zi in point.z)
    return cover.CoverPoint(factor * point.x, z, point.stratum)


def sample_cover_point(n, stratum=None, seed=0, shared=None, move=True, max_norm=25.0, unit_norm=False):
    """A certified strongly regular cover point.

    ``stratum`` defaults to the regular semisimple one.  With ``move=False``
    the point is left on the Hessenberg section; with ``unit_norm`` it is
    rescaled to unit Frobenius norm.
    """
    rng = _rng(seed)
    if stratum is None:
        stratum = RegularDecompositionData(tuple((1,) * i for i in range(1, n + 1)))
    if stratum.n != n:
        raise ValueError("stratum has the wrong number of levels")
    for _ in range(MAX_ATTEMPTS):
        try:
            z = sample_eigenvalues(stratum, rng, shared)
            point = _section_point(stratum, z)
            if move and n > 1:
                point = cover.zd_act(random_zd_element(stratum, rng, ZD_BOUND), point)
                i = int(rng.integers(1, n))
                j = int(rng.integers(1, i + 1))
                xi = np.linalg.norm(point.x[:i, :i])
                t = rng.uniform(-0.5, 0.5) / (j * max(1.0, xi) ** (j - 1))
                point = point.with_x(gz_core.gz_flow(point.x, i, j, t))
                point = balance(point)
            if np.linalg.norm(point.x) > max_norm:
                continue
            if unit_norm:
                point = rescale(point, 1.0 / np.linalg.norm(point.x))
            cover.validate_point(point)
        except GZError:
            continue
        return point
    raise SamplingFailure(f"no certified sample after {MAX_ATTEMPTS} attempts")


def sample_strongly_regular(n, stratum=None, seed=0, shared=None):
    """A certified strongly regular matrix in the tower of ``stratum``."""
    return sample_cover_point(n, stratum, seed, shared).x
