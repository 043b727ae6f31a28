"""
Dense complex matrix kernel.

Characteristic polynomials (Faddeev--LeVerrier), clustered spectra,
Jordan--Chevalley splitting and spectral projectors via Hermite
interpolation, centralizers and tolerance-aware ranks.

Matrices are plain ``numpy`` complex arrays; :func:`as_cmatrix` is the
single entry point that validates and converts user input.
"""

from dataclasses import dataclass
from math import factorial

import numpy as np
import scipy.linalg

from .errors import ClusterAmbiguity, DimensionMismatch, IndexOutOfRange, InvalidInput

__all__ = [
    "ClusteredSpectrum",
    "as_cmatrix",
    "centralizer_basis",
    "charpoly",
    "clustered_spectrum",
    "expm",
    "hermite_newton",
    "jordan_chevalley",
    "newton_matrix_eval",
    "nullspace",
    "numerical_rank",
    "pad",
    "poly_from_roots",
    "spectral_projector",
    "subspace_intersection_dim",
]

DEFAULT_TOL = 1e-8
DEFAULT_CLUSTER_TOL = 1e-6


def as_cmatrix(m):
    """Return ``m`` as a square complex array, rejecting NaN/Inf."""
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInput("matrix entries must be finite")
    return a


def pad(a, n):
    """Embed the ``i x i`` matrix ``a`` as the upper-left corner of an ``n x n`` zero matrix."""
    a = np.asarray(a, dtype=complex)
    i = a.shape[0]
    if i > n:
        raise DimensionMismatch(f"cannot pad a {i}x{i} block into {n}x{n}")
    out = np.zeros((n, n), dtype=complex)
    out[:i, :i] = a
    return out


def charpoly(m):
    """Non-leading coefficients of ``det(tI - m)``, lowest degree first.

    Entry ``j - 1`` is the coefficient of ``t**(j - 1)``.  Uses the
    Faddeev--LeVerrier recurrence so that it stays independent of any
    eigenvalue computation.
    """
    a = as_cmatrix(m)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = 1.0
    eye = np.eye(n, dtype=complex)
    mk = np.zeros_like(a)
    for k in range(1, n + 1):
        mk = a @ mk + coeffs[n - k + 1] * eye
        coeffs[n - k] = -np.trace(a @ mk) / k
    return coeffs[:n]


def poly_from_roots(roots, multiplicities=None):
    """Non-leading coefficients (lowest first) of ``prod (t - r)^m``."""
    roots = np.asarray(roots, dtype=complex)
    if multiplicities is None:
        multiplicities = [1] * len(roots)
    p = np.array([1.0 + 0j])  # ascending
    for r, mult in zip(roots, multiplicities):
        for _ in range(int(mult)):
            p = np.convolve(p, np.array([-r, 1.0]))
    return p[:-1]


@dataclass(frozen=True)
class ClusteredSpectrum:
    """Distinct eigenvalue clusters of a matrix with their multiplicities."""

    values: tuple
    multiplicities: tuple
    cluster_tol: float = DEFAULT_CLUSTER_TOL

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))
        object.__setattr__(self, "multiplicities", tuple(int(k) for k in self.multiplicities))
        if len(self.values) != len(self.multiplicities):
            raise DimensionMismatch("values and multiplicities differ in length")
        if any(k < 1 for k in self.multiplicities):
            raise ValueError("multiplicities must be positive")

    @property
    def dim(self):
        return sum(self.multiplicities)

    def __len__(self):
        return len(self.values)

    def index_of(self, value, tol=None):
        """Index of the cluster nearest to ``value`` (within ``tol`` if given)."""
        d = np.abs(np.array(self.values) - value)
        j = int(np.argmin(d))
        if tol is not None and d[j] > tol:
            raise IndexOutOfRange(f"no cluster within {tol} of {value}")
        return j


def _linkage_cuts(ev):
    """Single-linkage partitions of the eigenvalues, finest first."""
    n = len(ev)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def groups():
        g = {}
        for a in range(n):
            g.setdefault(find(a), []).append(a)
        return list(g.values())

    pairs = sorted(
        ((abs(ev[a] - ev[b]), a, b) for a in range(n) for b in range(a + 1, n)),
        key=lambda p: p[0],
    )
    cuts = [groups()]
    for _, a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
            cuts.append(groups())
    return cuts


def _jordan_certified(a, members, scale, tol):
    # A tight cluster of k computed eigenvalues is accepted as one eigenvalue of
    # algebraic multiplicity k when its centroid is numerically an eigenvalue and
    # (a - c)^k has a k-dimensional numerical kernel.
    k = len(members)
    c = members.mean()
    if np.max(np.abs(members - c)) > 1e-2 * scale:
        return False
    b = a - c * np.eye(a.shape[0])
    s1 = np.linalg.svd(b, compute_uv=False)
    if s1[-1] > tol * scale:
        return False
    sk = np.linalg.svd(np.linalg.matrix_power(b, k), compute_uv=False)
    return bool(np.all(sk[-k:] <= tol * scale**k))


def clustered_spectrum(m, tol=DEFAULT_CLUSTER_TOL, n_clusters=None):
    """Cluster the eigenvalues of ``m`` into distinct values with multiplicities.

    Eigenvalues come from the dense nonsymmetric solver.  A group of
    eigenvalues is merged when its diameter is at most ``tol``, or when the
    group is the round-off splitting of a single Jordan block (certified by
    the kernel dimensions of powers of ``m - centroid``).  The coarsest
    admissible single-linkage cut is returned.

    With ``n_clusters`` the cut with exactly that many clusters is taken and
    validated against the Faddeev--LeVerrier characteristic polynomial.

    Raises ClusterAmbiguity when two resulting clusters are closer than
    ``2 * tol`` or a forced clustering is inconsistent.
    """
    a = as_cmatrix(m)
    n = a.shape[0]
    ev = np.linalg.eigvals(a)
    scale = np.linalg.norm(a, 2)
    if scale == 0.0:
        scale = 1.0
    cuts = _linkage_cuts(ev)

    def admissible(group):
        pts = ev[group]
        if len(pts) == 1:
            return True
        if np.max(np.abs(pts[:, None] - pts[None, :])) <= tol:
            return True
        return _jordan_certified(a, pts, scale, DEFAULT_TOL)

    if n_clusters is not None:
        if not 1 <= n_clusters <= n:
            raise ClusterAmbiguity(f"cannot form {n_clusters} clusters from {n} eigenvalues")
        chosen = next(c for c in cuts if len(c) == n_clusters)
    else:
        chosen = cuts[0]
        for cut in cuts:
            if all(admissible(g) for g in cut):
                chosen = cut

    values = np.array([ev[g].mean() for g in chosen])
    mults = [len(g) for g in chosen]
    order = sorted(range(len(values)), key=lambda j: (round(values[j].real, 12), round(values[j].imag, 12)))
    values = values[order]
    mults = [mults[j] for j in order]

    if n_clusters is not None:
        ref = charpoly(a)
        got = poly_from_roots(values, mults)
        if np.max(np.abs(ref - got)) > 1e-6 * max(1.0, np.max(np.abs(ref))):
            raise ClusterAmbiguity(f"forced clustering into {n_clusters} groups is inconsistent")
    for p in range(len(values)):
        for q in range(p + 1, len(values)):
            if abs(values[p] - values[q]) <= 2 * tol:
                raise ClusterAmbiguity(
                    f"clusters {values[p]:.3g} and {values[q]:.3g} are closer than 2*tol"
                )
    return ClusteredSpectrum(tuple(values), tuple(mults), tol)


def hermite_newton(nodes, multiplicities, derivatives):
    """Newton-form Hermite interpolant.

    ``derivatives[j][k]`` is the k-th derivative at ``nodes[j]`` for
    ``k < multiplicities[j]``.  Returns ``(coeffs, xs)`` such that
    ``p(t) = sum_k coeffs[k] * prod_{l<k} (t - xs[l])``.
    """
    xs, fval = [], []
    for z, mult, ders in zip(nodes, multiplicities, derivatives):
        for _ in range(mult):
            xs.append(complex(z))
        fval.append(list(ders))
    N = len(xs)
    # origin[l] = (node index, first position) for the repeated-node rule
    origin = []
    for j, mult in enumerate(multiplicities):
        start = len(origin)
        origin.extend([(j, start)] * mult)
    table = np.zeros((N, N), dtype=complex)
    for l in range(N):
        table[l, 0] = fval[origin[l][0]][0]
    for k in range(1, N):
        for l in range(N - k):
            if abs(xs[l + k] - xs[l]) == 0.0:
                j = origin[l][0]
                table[l, k] = fval[j][k] / factorial(k)
            else:
                table[l, k] = (table[l + 1, k - 1] - table[l, k - 1]) / (xs[l + k] - xs[l])
    return table[0, :].copy(), xs


def newton_matrix_eval(coeffs, xs, m):
    """Evaluate a Newton-form polynomial at the square matrix ``m``."""
    n = m.shape[0]
    eye = np.eye(n, dtype=complex)
    out = coeffs[-1] * eye
    for k in range(len(coeffs) - 2, -1, -1):
        out = out @ (m - xs[k] * eye) + coeffs[k] * eye
    return out


def jordan_chevalley(m, tol=DEFAULT_CLUSTER_TOL, spectrum=None):
    """Split ``m = S + N`` with ``S`` diagonalizable, ``N`` nilpotent and ``[S, N] = 0``.

    ``S = p(m)`` for the Hermite interpolant with ``p = lambda_j`` modulo
    ``(t - lambda_j)^{m_j}``.
    """
    a = as_cmatrix(m)
    if spectrum is None:
        spectrum = clustered_spectrum(a, tol)
    n = a.shape[0]
    if len(spectrum) == 1:
        s = spectrum.values[0] * np.eye(n, dtype=complex)
        return s, a - s
    ders = [[v] + [0.0] * (k - 1) for v, k in zip(spectrum.values, spectrum.multiplicities)]
    coeffs, xs = hermite_newton(spectrum.values, spectrum.multiplicities, ders)
    s = newton_matrix_eval(coeffs, xs, a)
    return s, a - s


def spectral_projector(m, spectrum, j):
    """Projector onto the generalized eigenspace of cluster ``j`` along the others."""
    a = as_cmatrix(m)
    if not 0 <= j < len(spectrum):
        raise IndexOutOfRange(f"cluster index {j} out of range for {len(spectrum)} clusters")
    n = a.shape[0]
    if len(spectrum) == 1:
        return np.eye(n, dtype=complex)
    ders = [
        [1.0 if k == j else 0.0] + [0.0] * (mult - 1)
        for k, mult in enumerate(spectrum.multiplicities)
    ]
    coeffs, xs = hermite_newton(spectrum.values, spectrum.multiplicities, ders)
    return newton_matrix_eval(coeffs, xs, a)


def expm(m, tol=DEFAULT_CLUSTER_TOL):
    """Matrix exponential through the Jordan--Chevalley split.

    ``exp(S + N) = exp(S) exp(N)``, ``exp(S)`` from spectral projectors and
    ``exp(N)`` from its terminating series.  Eigenvalues are clustered in
    units of ``||m||`` since the projectors do not depend on scale.  If the
    clustering is ambiguous the scaling-and-squaring routine is used instead.
    """
    a = as_cmatrix(m)
    n = a.shape[0]
    norm = np.linalg.norm(a, 2)
    if norm == 0.0:
        return np.eye(n, dtype=complex)
    unit = a / norm
    try:
        spec = clustered_spectrum(unit, tol)
    except ClusterAmbiguity:
        return scipy.linalg.expm(a)
    s, nil = jordan_chevalley(unit, tol, spec)
    nil = nil * norm
    # exp(S) = e^mu (I + sum_j expm1(lambda_j - mu) P_j) keeps exp(m) - I accurate for small m
    mu = np.trace(a) / n
    exp_s = np.eye(n, dtype=complex)
    for j, v in enumerate(spec.values):
        exp_s += np.expm1(v * norm - mu) * spectral_projector(unit, spec, j)
    exp_s *= np.exp(mu)
    exp_n = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, n):
        term = term @ nil / k
        exp_n += term
    return exp_s @ exp_n


def nullspace(a, tol=DEFAULT_TOL):
    """Orthonormal columns spanning the numerical kernel of ``a`` (relative threshold)."""
    a = np.asarray(a, dtype=complex)
    _, sv, vh = np.linalg.svd(a)
    top = sv[0] if sv.size else 0.0
    cutoff = tol * top if top > 0 else 0.0
    rank = int(np.sum(sv > cutoff)) if top > 0 else 0
    return vh[rank:].conj().T


def centralizer_basis(m, tol=DEFAULT_TOL):
    """Frobenius-orthonormal basis of ``{Y : mY = Ym}``."""
    a = as_cmatrix(m)
    n = a.shape[0]
    eye = np.eye(n, dtype=complex)
    # column-major vec: vec(aY - Ya) = (I (x) a - a^T (x) I) vec(Y)
    ad = np.kron(eye, a) - np.kron(a.T, eye)
    if not np.any(ad):
        kernel = np.eye(n * n, dtype=complex)
    else:
        kernel = nullspace(ad, tol)
    return [kernel[:, k].reshape((n, n), order="F") for k in range(kernel.shape[1])]


def _as_rows(vectors):
    if len(vectors) == 0:
        raise DimensionMismatch("need at least one vector")
    shapes = {np.shape(v) for v in vectors}
    if len(shapes) != 1:
        raise DimensionMismatch(f"inconsistent shapes {sorted(shapes)}")
    return np.array([np.asarray(v, dtype=complex).ravel() for v in vectors])


def numerical_rank(vectors, tol=DEFAULT_TOL):
    """Number of singular values above ``tol`` times the largest one.

    Returns 0 when every singular value is below ``tol`` in absolute terms.
    """
    rows = _as_rows(vectors)
    sv = np.linalg.svd(rows, compute_uv=False)
    if sv[0] <= tol:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def subspace_intersection_dim(u, v, cos_tol=DEFAULT_TOL):
    """Dimension of ``span(u) & span(v)`` for orthonormal column bases.

    Counts principal-angle cosines above ``1 - cos_tol``.
    """
    if u.shape[1] == 0 or v.shape[1] == 0:
        return 0
    cos = np.linalg.svd(u.conj().T @ v, compute_uv=False)
    return int(np.sum(cos > 1.0 - cos_tol))
