"""
Regular decomposition classes of gl(i) as partitions, regular
decomposition data for towers X_D, deck-group orders, Z_D dimensions,
generic-locus counts and the stratum atlas.
"""

from dataclasses import dataclass
from itertools import product
from math import comb, factorial
from collections import Counter

import numpy as np

from . import gz_core, linalg_core as lc
from .errors import (
    ClusterAmbiguity,
    DimensionMismatch,
    DuplicateWithinLevel,
    NotRegular,
    NotStronglyRegular,
    RepeatedEigenvalue,
)

__all__ = [
    "GenericCounts",
    "RegularDecompositionData",
    "all_regular_data",
    "atlas",
    "canonical_rep",
    "class_of",
    "generic_counts",
    "in_tower",
    "make_partition",
    "partitions",
    "sigma_order",
    "stratum_of",
    "zd_dimension",
]


def make_partition(parts):
    """Normalize ``parts`` into a weakly decreasing tuple of positive ints."""
    p = tuple(sorted((int(k) for k in parts), reverse=True))
    if not p or any(k < 1 for k in p):
        raise ValueError(f"invalid partition {parts!r}")
    return p


def partitions(total, largest=None):
    """All partitions of ``total`` as decreasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in partitions(total - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class RegularDecompositionData:
    """One partition per level; level ``i`` (1-based) is a partition of ``i``."""

    strata: tuple

    def __post_init__(self):
        strata = tuple(make_partition(p) for p in self.strata)
        for i, p in enumerate(strata, start=1):
            if sum(p) != i:
                raise DimensionMismatch(f"level {i} partition {p} does not sum to {i}")
        object.__setattr__(self, "strata", strata)

    @property
    def n(self):
        return len(self.strata)

    def level(self, i):
        return self.strata[i - 1]

    def __str__(self):
        return "(" + ", ".join("(" + ",".join(map(str, p)) + ")" for p in self.strata) + ")"


def all_regular_data(n):
    """Every regular decomposition data with ``n`` levels."""
    for combo in product(*(list(partitions(i)) for i in range(1, n + 1))):
        yield RegularDecompositionData(combo)


def class_of(xi, tol=lc.DEFAULT_CLUSTER_TOL, n_clusters=None):
    """Partition of the regular decomposition class containing ``xi``.

    A regular matrix has a single Jordan block per eigenvalue, so the
    partition is the sorted list of eigenvalue multiplicities.
    """
    a = lc.as_cmatrix(xi)
    if len(lc.centralizer_basis(a)) != a.shape[0]:
        raise NotRegular("matrix is not regular")
    spec = lc.clustered_spectrum(a, tol, n_clusters=n_clusters)
    return make_partition(spec.multiplicities)


def canonical_rep(parts, eigenvalues):
    """Block-diagonal representative: block ``j`` is ``z_j I + e``, ``e`` the
    upper-triangular regular nilpotent Jordan block of size ``parts[j]``."""
    parts = tuple(int(k) for k in parts)
    ev = [complex(v) for v in eigenvalues]
    if len(ev) != len(parts):
        raise DimensionMismatch("one eigenvalue per part is required")
    if len(set(ev)) != len(ev):
        raise RepeatedEigenvalue("block eigenvalues must be pairwise distinct")
    n = sum(parts)
    out = np.zeros((n, n), dtype=complex)
    pos = 0
    for size, z in zip(parts, ev):
        blk = z * np.eye(size) + np.diag(np.ones(size - 1), 1)
        out[pos:pos + size, pos:pos + size] = blk
        pos += size
    return out


def sigma_order(data):
    """Order of the deck group: product of factorials of repeated part sizes."""
    order = 1
    for parts in data.strata:
        for count in Counter(parts).values():
            order *= factorial(count)
    return order


def zd_dimension(data):
    """``(r, s, total)`` with ``r_i`` the number of parts, ``s_i = i - r_i`` and
    ``total = sum_{i<n} (r_i + s_i)``."""
    r = tuple(len(p) for p in data.strata)
    s = tuple(i - ri for i, ri in enumerate(r, start=1))
    total = sum(r[i] + s[i] for i in range(data.n - 1))
    return r, s, total


def in_tower(x, data, tol=lc.DEFAULT_CLUSTER_TOL):
    """Whether ``x`` is strongly regular with every cutoff in the class ``data``."""
    a = lc.as_cmatrix(x)
    if a.shape[0] != data.n:
        raise DimensionMismatch("matrix size and number of levels differ")
    if not gz_core.is_strongly_regular(a).is_sreg:
        return False
    for i, parts in enumerate(data.strata, start=1):
        xi = a[:i, :i]
        try:
            found = class_of(xi, tol)
        except ClusterAmbiguity:
            found = None
        if found == parts:
            continue
        # forcing may merge a split cluster but never split a certified one
        if found is not None and len(found) <= len(parts):
            return False
        try:
            forced = class_of(xi, tol, n_clusters=len(parts))
        except ClusterAmbiguity:
            return False
        if forced != parts:
            return False
    return True


def stratum_of(x, tol=lc.DEFAULT_CLUSTER_TOL):
    """Regular decomposition data of a strongly regular matrix."""
    a = lc.as_cmatrix(x)
    if not gz_core.is_strongly_regular(a).is_sreg:
        raise NotStronglyRegular("stratum_of needs a strongly regular matrix")
    return RegularDecompositionData(tuple(class_of(a[:i, :i], tol) for i in range(1, a.shape[0] + 1)))


@dataclass(frozen=True)
class GenericCounts:
    j: tuple
    orbit_count: int
    generic: bool


def generic_counts(z_tuple, tol=lc.DEFAULT_CLUSTER_TOL):
    """Common eigenvalues ``j_i`` of consecutive levels and the orbit count ``2**sum(j)``."""
    levels = [[complex(v) for v in zi] for zi in z_tuple]
    for i, zi in enumerate(levels, start=1):
        for p in range(len(zi)):
            for q in range(p + 1, len(zi)):
                if abs(zi[p] - zi[q]) <= tol:
                    raise DuplicateWithinLevel(f"level {i} repeats the value {zi[p]}")
    j = tuple(
        sum(1 for a in lo if any(abs(a - b) <= tol for b in hi))
        for lo, hi in zip(levels, levels[1:])
    )
    return GenericCounts(j, 2 ** sum(j), all(v == 0 for v in j))


def atlas(n):
    """Rows ``(D, dim X_D, |Sigma_D|, dim Z_D)`` for every regular data with ``n`` levels."""
    rows = []
    for data in all_regular_data(n):
        r, _, total = zd_dimension(data)
        rows.append({
            "stratum": [list(p) for p in data.strata],
            "dim_z": sum(r),
            "dim_X": sum(r) + n * n - comb(n + 1, 2),
            "sigma_order": sigma_order(data),
            "dim_ZD": total,
        })
    return rows
