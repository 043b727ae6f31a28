"""
The cover of a decomposition tower in (x, z) coordinates.

A cover point is a strongly regular ``x`` together with, for every level
``i``, an ordered tuple ``z_i`` of the distinct eigenvalues of the cutoff
``x_i`` listed in the block order of the level partition.  All level
generators (spectral projectors and powers of the nilpotent part) are
computed intrinsically from ``x_i`` and ``z_i``; no conjugating matrix is
ever chosen.
"""

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np

from . import decomp, gz_core, linalg_core as lc
from .decomp import RegularDecompositionData
from .errors import (
    ClusterAmbiguity,
    DimensionMismatch,
    FiberMismatch,
    IllegalPermutation,
    IndexOutOfRange,
    NoSolution,
    NotInTower,
    SingularSemisimplePart,
)

__all__ = [
    "CoverPoint",
    "ZDElement",
    "deck",
    "kappa",
    "level_generators",
    "lift",
    "lift_span_check",
    "lift_span_ranks",
    "mu",
    "p_flow",
    "p_function",
    "q_flow",
    "q_function",
    "transporter",
    "validate_point",
    "zd_act",
]


@dataclass(frozen=True, eq=False)
class CoverPoint:
    """A point ``(x, z_1, ..., z_n)`` of the cover.

    ``stratum`` fixes the block sizes; ``z[i-1][j]`` is the eigenvalue of
    the ``j``-th block of level ``i``.  If omitted it is inferred by
    assigning the computed eigenvalues of each cutoff to the nearest entry
    of ``z_i``.
    """

    x: np.ndarray
    z: tuple
    stratum: RegularDecompositionData = field(default=None)

    def __post_init__(self):
        x = lc.as_cmatrix(self.x)
        x.setflags(write=False)
        z = tuple(tuple(complex(v) for v in zi) for zi in self.z)
        n = x.shape[0]
        if len(z) != n:
            raise DimensionMismatch(f"need {n} eigenvalue tuples, got {len(z)}")
        stratum = self.stratum
        if stratum is None:
            stratum = _infer_stratum(x, z)
        if stratum.n != n:
            raise DimensionMismatch("stratum and matrix sizes differ")
        for i, (zi, parts) in enumerate(zip(z, stratum.strata), start=1):
            if len(zi) != len(parts):
                raise DimensionMismatch(f"level {i}: {len(parts)} blocks but {len(zi)} eigenvalues")
            if len(set(zi)) != len(zi):
                raise DimensionMismatch(f"level {i}: eigenvalues must be distinct")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "stratum", stratum)

    @property
    def n(self):
        return self.x.shape[0]

    def spectrum(self, i):
        """Clustered spectrum of the cutoff ``x_i`` in block order."""
        return lc.ClusteredSpectrum(self.z[i - 1], self.stratum.level(i))

    def with_x(self, x):
        return CoverPoint(x, self.z, self.stratum)


def _infer_stratum(x, z):
    strata = []
    for i, zi in enumerate(z, start=1):
        ev = np.linalg.eigvals(x[:i, :i])
        ref = np.array(zi)
        counts = Counter(int(np.argmin(np.abs(ref - e))) for e in ev)
        parts = tuple(counts.get(j, 0) for j in range(len(zi)))
        if any(p == 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
            raise NotInTower(f"level {i}: eigenvalue tuple {zi} does not match the cutoff in block order")
        strata.append(parts)
    return RegularDecompositionData(tuple(strata))


@dataclass(frozen=True, eq=False)
class ZDElement:
    """An element of Z_D = Z_{D_1} x ... x Z_{D_{n-1}}.

    ``levels[i-1] = (s, t)``: ``s`` holds one nonzero scalar per block of
    level ``i``; ``t`` holds the unipotent coordinates ``t_(j, m)``,
    ``1 <= m < size_j``, flattened block-major.
    """

    levels: tuple

    def __post_init__(self):
        levels = tuple(
            (np.array(s, dtype=complex).reshape(-1), np.array(t, dtype=complex).reshape(-1))
            for s, t in self.levels
        )
        for i, (s, _) in enumerate(levels, start=1):
            if np.any(s == 0):
                raise SingularSemisimplePart(f"level {i} has a zero semisimple coordinate")
        object.__setattr__(self, "levels", levels)

    @classmethod
    def identity(cls, stratum):
        r, s, _ = decomp.zd_dimension(stratum)
        return cls(tuple((np.ones(r[i]), np.zeros(s[i])) for i in range(stratum.n - 1)))

    def __mul__(self, other):
        """Group law: semisimple parts multiply, unipotent coordinates add."""
        if len(self.levels) != len(other.levels):
            raise DimensionMismatch("Z_D elements of different strata")
        return ZDElement(tuple((s1 * s2, t1 + t2) for (s1, t1), (s2, t2) in zip(self.levels, other.levels)))

    def inverse(self):
        return ZDElement(tuple((1.0 / s, -t) for s, t in self.levels))

    def distance(self, other):
        """Max-norm distance between coordinates."""
        return max(
            max(np.max(np.abs(s1 - s2), initial=0.0), np.max(np.abs(t1 - t2), initial=0.0))
            for (s1, t1), (s2, t2) in zip(self.levels, other.levels)
        )

    def is_identity(self, tol=0.0):
        return all(np.all(np.abs(s - 1) <= tol) and np.all(np.abs(t) <= tol) for s, t in self.levels)


def mu(point):
    return point.x


def kappa(point):
    return point.z


def _level_spectrum(xi, parts, tol):
    spec = lc.clustered_spectrum(xi, tol)
    if tuple(sorted(spec.multiplicities, reverse=True)) == tuple(parts):
        return spec
    spec = lc.clustered_spectrum(xi, tol, n_clusters=len(parts))
    if tuple(sorted(spec.multiplicities, reverse=True)) != tuple(parts):
        raise NotInTower(f"cutoff spectrum {spec.multiplicities} does not match {parts}")
    return spec


def _orderings(spec, parts):
    # every assignment of cluster values to blocks that respects block sizes
    by_size = {}
    for v, k in zip(spec.values, spec.multiplicities):
        by_size.setdefault(k, []).append(v)
    sizes = sorted(by_size, reverse=True)
    slots = {s: [p for p, size in enumerate(parts) if size == s] for s in sizes}
    result = []
    for choice in product(*(permutations(by_size[s]) for s in sizes)):
        z = [None] * len(parts)
        for s, perm in zip(sizes, choice):
            for pos, v in zip(slots[s], perm):
                z[pos] = v
        result.append(tuple(z))
    return result


def lift(x, stratum, tol=lc.DEFAULT_CLUSTER_TOL):
    """All cover points over ``x``; there are exactly ``sigma_order(stratum)`` of them."""
    a = lc.as_cmatrix(x)
    if not decomp.in_tower(a, stratum, tol):
        raise NotInTower(f"matrix is not in the tower {stratum}")
    per_level = []
    for i, parts in enumerate(stratum.strata, start=1):
        spec = _level_spectrum(a[:i, :i], parts, tol)
        per_level.append(_orderings(spec, parts))
    return [CoverPoint(a, z, stratum) for z in product(*per_level)]


def validate_point(point, tol=1e-6):
    """Check that ``z_i`` with the block sizes reproduces the spectrum of each
    cutoff and that ``x`` is strongly regular.  Returns the worst relative
    characteristic-polynomial mismatch."""
    worst = 0.0
    for i in range(1, point.n + 1):
        ref = lc.charpoly(point.x[:i, :i])
        got = lc.poly_from_roots(point.z[i - 1], point.stratum.level(i))
        worst = max(worst, float(np.max(np.abs(ref - got)) / max(1.0, np.max(np.abs(ref)))))
    if worst > tol:
        raise NotInTower(f"eigenvalue tuples inconsistent with the cutoffs (mismatch {worst:.2e})")
    if not gz_core.is_strongly_regular(point.x).is_sreg:
        raise NotInTower("cover point is not strongly regular")
    return worst


def deck(sigma, point):
    """Permute the eigenvalue tuples by ``sigma`` (one permutation per level)."""
    if len(sigma) != point.n:
        raise DimensionMismatch("need one permutation per level")
    z = []
    for i, (perm, zi) in enumerate(zip(sigma, point.z), start=1):
        parts = point.stratum.level(i)
        perm = tuple(range(len(zi))) if perm is None else tuple(perm)
        if sorted(perm) != list(range(len(zi))):
            raise IllegalPermutation(f"level {i}: {perm} is not a permutation")
        if any(parts[perm[j]] != parts[j] for j in range(len(perm))):
            raise IllegalPermutation(f"level {i}: {perm} mixes blocks of different sizes")
        z.append(tuple(zi[perm[j]] for j in range(len(perm))))
    return CoverPoint(point.x, tuple(z), point.stratum)


def _check_level(point, i):
    if not 1 <= i <= point.n - 1:
        raise IndexOutOfRange(f"level {i} outside 1..{point.n - 1}")


def level_generators(point, i, tol=lc.DEFAULT_CLUSTER_TOL):
    """Spectral projectors and nilpotent centralizer generators of level ``i``.

    Returns ``(P, N)``: ``P[j]`` projects onto the generalized eigenspace of
    ``z_{i,j}``; ``N`` lists ``(x_i - z_{i,j})^m P[j]`` for ``1 <= m < size_j``,
    block-major.  All are padded to ``n x n``.
    """
    _check_level(point, i)
    n = point.n
    xi = point.x[:i, :i]
    spec = point.spectrum(i)
    projs = [lc.spectral_projector(xi, spec, j) for j in range(len(spec))]
    nils = []
    for j, (zj, size) in enumerate(zip(spec.values, spec.multiplicities)):
        shift = xi - zj * np.eye(i)
        power = projs[j]
        for _ in range(1, size):
            power = shift @ power
            nils.append(lc.pad(power, n))
    return [lc.pad(p, n) for p in projs], nils


def _padded_cutoffs(point, start):
    return [lc.pad(point.x[:s, :s], point.n) for s in range(start, point.n + 1)]


def q_function(point, i, j):
    """``sum_{s>i} Tr(x_s P_{i,j}) / size_{i,j}``."""
    _check_level(point, i)
    parts = point.stratum.level(i)
    if not 1 <= j <= len(parts):
        raise IndexOutOfRange(f"q index {j} outside 1..{len(parts)}")
    proj = level_generators(point, i)[0][j - 1]
    return complex(sum(np.trace(xs @ proj) for xs in _padded_cutoffs(point, i + 1)) / parts[j - 1])


def p_function(point, i, k):
    """``sum_{s>i} Tr(x_s N_{i,k})`` with the nilpotent generators of level ``i``."""
    _check_level(point, i)
    nils = level_generators(point, i)[1]
    if not 1 <= k <= len(nils):
        raise IndexOutOfRange(f"p index {k} outside 1..{len(nils)}")
    return complex(sum(np.trace(xs @ nils[k - 1]) for xs in _padded_cutoffs(point, i + 1)))


def _nil_exp(a, order):
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, order + 1):
        term = term @ a / k
        out = out + term
    return out


def q_flow(point, i, j, t):
    """Conjugate ``x`` by ``exp(-t P_{i,j} / size_{i,j})``."""
    _check_level(point, i)
    parts = point.stratum.level(i)
    if not 1 <= j <= len(parts):
        raise IndexOutOfRange(f"q index {j} outside 1..{len(parts)}")
    proj = level_generators(point, i)[0][j - 1]
    eye = np.eye(point.n, dtype=complex)
    scale = np.exp(-t / parts[j - 1])
    h = eye + (scale - 1.0) * proj
    hinv = eye + (1.0 / scale - 1.0) * proj
    return point.with_x(h @ point.x @ hinv)


def p_flow(point, i, k, t):
    """Conjugate ``x`` by the unipotent ``exp(-t N_{i,k})``."""
    _check_level(point, i)
    nils = level_generators(point, i)[1]
    if not 1 <= k <= len(nils):
        raise IndexOutOfRange(f"p index {k} outside 1..{len(nils)}")
    h = _nil_exp(-t * nils[k - 1], i)
    hinv = _nil_exp(t * nils[k - 1], i)
    return point.with_x(h @ point.x @ hinv)


def _level_factor(point, i, s, t):
    """``h_i`` and its inverse for level coordinates ``(s, t)``."""
    n = point.n
    projs, nils = level_generators(point, i)
    if len(s) != len(projs) or len(t) != len(nils):
        raise DimensionMismatch(f"level {i}: expected {len(projs)} + {len(nils)} coordinates")
    outside = np.eye(n, dtype=complex) - lc.pad(np.eye(i), n)
    semi = sum(sj * p for sj, p in zip(s, projs))
    semi_inv = sum(p / sj for sj, p in zip(s, projs))
    nil = sum((tk * nk for tk, nk in zip(t, nils)), np.zeros((n, n), dtype=complex))
    h = semi @ _nil_exp(nil, i) + outside
    hinv = semi_inv @ _nil_exp(-nil, i) + outside
    return h, hinv


def zd_act(k, point):
    """Action of ``k`` on a cover point: ``x -> Ad(h_1 ... h_{n-1}) x``.

    Each ``h_i`` is assembled from the level generators of the original ``x``.
    """
    if len(k.levels) != point.n - 1:
        raise DimensionMismatch("Z_D element and cover point have different sizes")
    n = point.n
    g = np.eye(n, dtype=complex)
    ginv = np.eye(n, dtype=complex)
    for i, (s, t) in enumerate(k.levels, start=1):
        h, hinv = _level_factor(point, i, s, t)
        g = g @ h
        ginv = hinv @ ginv
    return point.with_x(g @ point.x @ ginv)


def _unipotent_log(coeffs, size):
    """Coefficients of ``log(1 + u)`` in ``C[v]/(v^size)``, ``u = sum coeffs[m-1] v^m``."""
    u = np.zeros(size, dtype=complex)
    u[1:] = coeffs
    out = np.zeros(size, dtype=complex)
    power = np.zeros(size, dtype=complex)
    power[0] = 1.0
    for k in range(1, size):
        power = np.convolve(power, u)[:size]
        out += (-1) ** (k + 1) * power / k
    return out[1:]


def transporter(p_from, p_to, tol=lc.DEFAULT_TOL):
    """The ``k`` in Z_D with ``zd_act(k, p_from) == p_to``.

    Level by level the factor ``h_i``, restricted to ``gl(i+1)``, solves the
    homogeneous linear system ``h y_{i+1} = x'_{i+1} h`` over the span of the
    level generators plus the corner unit, where ``x'`` is the target pulled
    back by the factors already found.  Raises NoSolution when no invertible
    solution with unit corner exists.
    """
    n = p_from.n
    if p_to.n != n:
        raise DimensionMismatch("cover points of different sizes")
    if p_from.stratum != p_to.stratum:
        raise FiberMismatch("cover points lie over different strata")
    scale = max(1.0, max(abs(v) for zi in p_from.z for v in zi))
    for za, zb in zip(p_from.z, p_to.z):
        if np.max(np.abs(np.array(za) - np.array(zb))) > lc.DEFAULT_CLUSTER_TOL * scale:
            raise FiberMismatch("eigenvalue tuples differ")
    y = p_from.x
    target = p_to.x
    g = np.eye(n, dtype=complex)
    ginv = np.eye(n, dtype=complex)
    levels = []
    for i in range(1, n):
        m = i + 1
        projs, nils = level_generators(p_from, i)
        basis = [b[:m, :m] for b in projs + nils]
        corner = np.zeros((m, m), dtype=complex)
        corner[i, i] = 1.0
        basis.append(corner)
        ym = y[:m, :m]
        tm = (ginv @ target @ g)[:m, :m]
        # unit-norm columns so that projectors and nilpotents weigh the same
        norms = np.array([np.linalg.norm(b) for b in basis])
        system = np.array([(b @ ym - tm @ b).ravel() / nb for b, nb in zip(basis, norms)]).T
        kernel = lc.nullspace(system, tol) / norms[:, None]
        if kernel.shape[1] == 0:
            raise NoSolution(f"level {i}: no centralizer element intertwines the cutoffs")
        w = kernel[-1, :]
        if np.linalg.norm(w) <= tol:
            raise NoSolution(f"level {i}: intertwiner would be singular")
        coef = kernel @ (w.conj() / np.vdot(w, w))
        r = len(projs)
        s = coef[:r]
        a = coef[r:-1]
        block = sum(c * b for c, b in zip(coef[:-1], basis[:-1]))[:i, :i]
        sv = np.linalg.svd(block, compute_uv=False)
        if sv[-1] <= tol * max(sv[0], 1.0):
            raise NoSolution(f"level {i}: intertwiner is singular")
        t = []
        pos = 0
        for sj, size in zip(s, p_from.stratum.level(i)):
            t.extend(_unipotent_log(a[pos:pos + size - 1] / sj, size))
            pos += size - 1
        levels.append((s, np.array(t, dtype=complex)))
        h, hinv = _level_factor(p_from, i, s, t)
        g = g @ h
        ginv = hinv @ ginv
    k = ZDElement(tuple(levels))
    resid = np.linalg.norm(g @ y @ ginv - target) / max(1.0, np.linalg.norm(target))
    if resid > 1e-6:
        raise NoSolution(f"transported point misses the target (residual {resid:.2e})")
    return k


def _unit_rows(mats):
    return [m / np.linalg.norm(m) for m in mats if np.linalg.norm(m) > 0]


def lift_span_ranks(point, tol=lc.DEFAULT_TOL):
    """Ranks of the lifted fields, of the GZ fields, and of their union."""
    x = point.x
    lifted = []
    for i in range(1, point.n):
        projs, nils = level_generators(point, i)
        lifted.extend(x @ b - b @ x for b in projs + nils)
    base, _ = gz_core.a_tangent_span(x, tol)
    xn = np.linalg.norm(x)
    # drop fields that vanish up to round-off relative to ||x||
    lifted = [f for f in lifted if np.linalg.norm(f) > tol * xn]
    base = [f for f in base if np.linalg.norm(f) > tol * xn]
    if not lifted and not base:
        return 0, 0, 0
    ra = lc.numerical_rank(_unit_rows(lifted), tol) if lifted else 0
    rb = lc.numerical_rank(_unit_rows(base), tol) if base else 0
    rab = lc.numerical_rank(_unit_rows(lifted + base), tol)
    return ra, rb, rab


def lift_span_check(point, tol=lc.DEFAULT_TOL):
    """Whether the lifted fields push forward onto the span of the GZ fields."""
    ra, rb, rab = lift_span_ranks(point, tol)
    return ra == rb == rab
