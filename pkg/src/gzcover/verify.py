"""
The verification suite: one seeded numerical check per claim of the theory.

Every check returns :class:`CheckRecord` entries; a record passes iff its
worst residual is within its tolerance.  Count-type checks use the number
of failing samples as the residual with tolerance 0.
"""

import time
from dataclasses import asdict, dataclass, field
from math import comb

import numpy as np

from . import cover, decomp, gz_core, hessenberg, linalg_core as lc, sampling
from .errors import GZError, NoSolution

__all__ = [
    "CheckRecord",
    "SUITES",
    "VerificationReport",
    "check_covering",
    "check_dimensions",
    "check_flows",
    "check_kw_inverse",
    "check_lagrangian",
    "check_lift",
    "check_orbit_count",
    "check_poisson",
    "check_ranks",
    "check_transitivity",
    "check_zd_action",
    "run_suite",
]


@dataclass
class CheckRecord:
    name: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool = field(init=False)
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        self.max_residual = float(self.max_residual)
        self.passed = bool(self.max_residual <= self.tolerance)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: residual {self.max_residual:.3e} <= {self.tolerance:.1e} ({self.samples} samples)"


@dataclass
class VerificationReport:
    suite: str
    seed: int
    records: list
    wall_time: float

    @property
    def passed(self):
        return all(r.passed for r in self.records)

    def to_dict(self):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "wall_time": self.wall_time,
            "records": [asdict(r) for r in self.records],
        }


# Random Z_D elements in the action checks have log|s|, arg s, Re t, Im t in
# [-K_BOUND, K_BOUND].  The roundtrip error of the transporter scales with
# cond(h_1 ... h_{n-1}) squared times machine epsilon, so the box is kept moderate.
K_BOUND = 0.5


def _rng(seed, tag):
    # independent stream per check so suites can run in any order
    return np.random.default_rng([seed, sum(map(ord, tag))])


def _all_strata(max_n, min_n=1):
    for n in range(min_n, max_n + 1):
        yield from decomp.all_regular_data(n)


def _random_matrix(n, rng):
    return (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2 * n)


def check_poisson(seed=0, samples=50, ns=(3, 4, 5)):
    """Pairwise brackets of all GZ functions, relative to ``||x|| ||grad f|| ||grad g||``."""
    rng = _rng(seed, "poisson")
    worst = 0.0
    count = 0
    for n in ns:
        idx = gz_core.gz_indices(n)
        for _ in range(samples):
            x = _random_matrix(n, rng)
            grads = {ij: gz_core.gz_gradient(x, *ij) for ij in idx}
            xn = np.linalg.norm(x)
            for p, a in enumerate(idx):
                for b in idx[p + 1:]:
                    scale = xn * np.linalg.norm(grads[a]) * np.linalg.norm(grads[b])
                    val = abs(gz_core.lie_poisson_bracket(a, b, x))
                    worst = max(worst, val / scale if scale > 0 else val)
            count += 1
    return [CheckRecord("poisson-commutativity", count, worst, 1e-8)]


def _rank_samples(seed, samples, ns):
    rng = _rng(seed, "ranks")
    for n in ns:
        for _ in range(samples):
            stratum = sampling.random_stratum(n, rng)
            yield sampling.sample_cover_point(n, stratum, rng)


def check_ranks(seed=0, samples=50, ns=(3, 4, 5)):
    """Jacobian rank of the GZ map and rank of the GZ fields at sampled points."""
    jac_bad = span_bad = count = 0
    for p in _rank_samples(seed, samples, ns):
        n = p.n
        jac_bad += gz_core.phi_jacobian_rank(p.x) != comb(n + 1, 2)
        span_bad += gz_core.a_tangent_span(p.x)[1] != comb(n, 2)
        count += 1
    return [
        CheckRecord("phi-jacobian-rank", count, jac_bad, 0),
        CheckRecord("gz-field-rank", count, span_bad, 0),
    ]


def check_lagrangian(seed=0, samples=50, ns=(3, 4, 5)):
    """KKS isotropy of the GZ fields and the half-dimension count, same samples as the rank check."""
    worst = 0.0
    bad = count = 0
    for p in _rank_samples(seed, samples, ns):
        pairing, lagrangian = gz_core.kks_isotropy_check(p.x)
        worst = max(worst, pairing)
        bad += not lagrangian
        count += 1
    return [
        CheckRecord("kks-isotropy", count, worst, 1e-8),
        CheckRecord("lagrangian-dimension", count, bad, 0),
    ]


def check_lift(seed=0, samples=50, ns=(3, 4, 5)):
    """Lifted fields span the GZ fields, same samples as the rank check."""
    bad = count = 0
    for p in _rank_samples(seed, samples, ns):
        bad += not cover.lift_span_check(p)
        count += 1
    return [CheckRecord("lift-span", count, bad, 0)]


def _flow_family(p):
    """``(label, flow(point, t), field at p)`` for every GZ, q and p flow at ``p``."""
    n = p.n
    out = []
    for i, j in gz_core.gz_indices(n, include_top=False):
        out.append((
            "gz",
            lambda q, t, i=i, j=j: q.with_x(gz_core.gz_flow(q.x, i, j, t)),
            gz_core.gz_field(p.x, i, j),
        ))
    for i in range(1, n):
        projs, nils = cover.level_generators(p, i)
        parts = p.stratum.level(i)
        for j, proj in enumerate(projs, start=1):
            a = proj / parts[j - 1]
            out.append(("q", lambda q, t, i=i, j=j: cover.q_flow(q, i, j, t), p.x @ a - a @ p.x))
        for k, nil in enumerate(nils, start=1):
            out.append(("p", lambda q, t, i=i, k=k: cover.p_flow(q, i, k, t), p.x @ nil - nil @ p.x))
    return out


def check_flows(seed=0, samples=10, ns=(3, 4), step=1e-5):
    """Finite differences against field formulas, fiber drift for ``|t| <= 1``, pairwise commutation.

    Samples are scaled to unit Frobenius norm so that ``|t| <= 1`` means the
    same thing for every level and power.
    """
    rng = _rng(seed, "flows")
    fd = {"gz": 0.0, "q": 0.0, "p": 0.0}
    fd_count = {"gz": 0, "q": 0, "p": 0}
    drift = comm = 0.0
    count = 0
    times = (-1.0, -0.5, 0.5, 1.0, 1j, np.exp(0.75j * np.pi))
    for n in ns:
        for _ in range(samples):
            stratum = sampling.random_stratum(n, rng)
            p = sampling.sample_cover_point(n, stratum, rng, unit_norm=True)
            c = gz_core.kw_map(p.x)
            flows = _flow_family(p)
            for label, flow, vec in flows:
                diff = (flow(p, step).x - flow(p, -step).x) / (2 * step)
                fd[label] = max(fd[label], np.linalg.norm(diff - vec) / np.linalg.norm(vec))
                fd_count[label] += 1
                for t in times:
                    drift = max(drift, gz_core.kw_map(flow(p, t).x).distance(c))
            s, t = rng.uniform(-1, 1, 2)
            for a in range(len(flows)):
                for b in range(a + 1, len(flows)):
                    fa, fb = flows[a][1], flows[b][1]
                    x1 = fb(fa(p, s), t).x
                    x2 = fa(fb(p, t), s).x
                    comm = max(comm, np.linalg.norm(x1 - x2) / np.linalg.norm(p.x))
            count += 1
    records = [
        CheckRecord(f"{label}-flow-derivative", fd_count[label], fd[label], 1e-6)
        for label in ("gz", "q", "p")
    ]
    records.append(CheckRecord("flow-fiber-drift", count, drift, 1e-8))
    records.append(CheckRecord("flow-commutation", count, comm, 1e-8))
    return records


def check_kw_inverse(seed=0, samples=100, ns=(2, 3, 4, 5, 6)):
    """``kw_map(phi_inverse(c)) == c`` and strong regularity of the section."""
    rng = _rng(seed, "kw-inverse")
    worst = 0.0
    bad = count = 0
    for n in ns:
        for _ in range(samples):
            c = gz_core.GZValue(tuple(
                (rng.normal(size=i) + 1j * rng.normal(size=i)) / np.sqrt(2) for i in range(1, n + 1)
            ))
            x = hessenberg.phi_inverse(c)
            worst = max(worst, gz_core.kw_map(x).distance(c))
            bad += not gz_core.is_strongly_regular(x).is_sreg
            count += 1
    return [
        CheckRecord("kw-inverse-roundtrip", count, worst, 1e-10),
        CheckRecord("section-strongly-regular", count, bad, 0),
    ]


def check_covering(seed=0, max_n=4):
    """``|lift(x, D)| = |Sigma_D|`` for every stratum, ``x`` built from canonical representatives."""
    rng = _rng(seed, "covering")
    bad = count = 0
    failures = []
    for data in _all_strata(max_n):
        z = sampling.sample_eigenvalues(data, rng)
        c = gz_core.GZValue(tuple(
            lc.charpoly(decomp.canonical_rep(parts, zi)) for parts, zi in zip(data.strata, z)
        ))
        x = hessenberg.phi_inverse(c)
        try:
            ok = len(cover.lift(x, data)) == decomp.sigma_order(data)
        except GZError:
            ok = False
        if not ok:
            bad += 1
            failures.append(str(data))
        count += 1
    return [CheckRecord("covering-degree", count, bad, 0, {"failures": failures})]


def _strata_with_action(max_n):
    return list(_all_strata(max_n, min_n=2))


def check_zd_action(seed=0, samples=25, max_n=4):
    """Group law of the Z_D action and freeness on every stratum."""
    rng = _rng(seed, "zd-action")
    law = 0.0
    weakest = np.inf
    count = 0
    for data in _strata_with_action(max_n):
        for _ in range(samples):
            p = sampling.sample_cover_point(data.n, data, rng)
            k1 = sampling.random_zd_element(data, rng, K_BOUND)
            k2 = sampling.random_zd_element(data, rng, K_BOUND)
            lhs = cover.zd_act(k1 * k2, p).x
            rhs = cover.zd_act(k1, cover.zd_act(k2, p)).x
            law = max(law, np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs))
            k = sampling.random_zd_element(data, rng, K_BOUND)
            weakest = min(weakest, np.linalg.norm(cover.zd_act(k, p).x - p.x))
            count += 1
    return [
        CheckRecord("zd-group-law", count, law, 1e-8),
        # residual is 1e-6 / (smallest displacement); freeness needs every move >= 1e-6
        CheckRecord("zd-freeness", count, 1e-6 / weakest, 1.0, {"min_displacement": float(weakest)}),
    ]


def check_transitivity(seed=0, samples=25, max_n=4):
    """Trivialization over the Hessenberg section and transporter roundtrips on generic fibers."""
    rng = _rng(seed, "transitivity")
    triv = trip = 0.0
    failures = count = 0
    for data in _strata_with_action(max_n):
        for _ in range(samples):
            p = sampling.sample_cover_point(data.n, data, rng)
            try:
                k, x_hess = hessenberg.trivialize(p)
                base = cover.CoverPoint(x_hess, p.z, p.stratum)
                moved = cover.zd_act(k, base).x
                triv = max(triv, np.linalg.norm(moved - p.x) / np.linalg.norm(p.x))
                k0 = sampling.random_zd_element(data, rng, K_BOUND)
                back = cover.transporter(p, cover.zd_act(k0, p))
                trip = max(trip, back.distance(k0))
            except GZError:
                failures += 1
            count += 1
    return [
        CheckRecord("trivialize-residual", count, triv, 1e-8),
        CheckRecord("transporter-roundtrip", count, trip, 1e-8),
        CheckRecord("generic-transport-failures", count, failures, 0),
    ]


_N2_STRATUM = decomp.RegularDecompositionData(((1,), (1, 1)))


def _n2_point(b, c, z2):
    """Cover point over ``[[1, b], [c, trace - 1]]`` with level-2 eigenvalues ``z2``."""
    x = np.array([[1.0, b], [c, sum(z2) - 1.0]], dtype=complex)
    return cover.CoverPoint(x, ((1.0,), tuple(z2)), _N2_STRATUM)


def check_orbit_count(seed=0, samples=20):
    """Brute-force oracle at n = 2 plus an uncertified report for n = 3.

    For ``sigma_1 = {1}``, ``sigma_2 = {1, 3}`` the fiber is
    ``x = [[1, b], [c, 3]]`` with ``bc = 0`` and ``(b, c) != 0``; its two
    components ``{b = 0}`` and ``{c = 0}`` must be the Z_D-orbits.
    For ``sigma_2 = {2, 3}`` the fiber ``bc = -2`` is a single orbit.
    """
    rng = _rng(seed, "orbit-count")

    def nonzero():
        r = 2.0 ** rng.uniform(-1, 1)
        return r * np.exp(1j * rng.uniform(-np.pi, np.pi))

    records = []
    expected = decomp.generic_counts(((1.0,), (1.0, 3.0))).orbit_count
    # the two components found by hand: every fiber point has b = 0 or c = 0, not both
    components = [lambda: _n2_point(0.0, nonzero(), (1.0, 3.0)), lambda: _n2_point(nonzero(), 0.0, (1.0, 3.0))]
    sreg_bad = sum(not gz_core.is_strongly_regular(make().x).is_sreg for make in components for _ in range(samples))
    sreg_bad += gz_core.is_strongly_regular(np.diag([1.0, 3.0])).is_sreg
    records.append(CheckRecord("n2-orbit-count", 1, abs(expected - len(components)), 0, {"orbit_count": expected}))
    records.append(CheckRecord("n2-fiber-strong-regularity", 2 * samples + 1, sreg_bad, 0))

    within = 0.0
    within_fail = across_fail = 0
    for _ in range(samples):
        for make in components:
            p, q = make(), make()
            try:
                k = cover.transporter(p, q)
                within = max(within, np.linalg.norm(cover.zd_act(k, p).x - q.x))
            except NoSolution:
                within_fail += 1
        p, q = components[0](), components[1]()
        for a, b in ((p, q), (q, p)):
            try:
                cover.transporter(a, b)
                across_fail += 1
            except NoSolution:
                pass
    records.append(CheckRecord("n2-within-component", 2 * samples, within_fail, 0, {"max_residual": within}))
    records.append(CheckRecord("n2-across-components", 2 * samples, across_fail, 0))

    generic_fail = 0
    for _ in range(samples):
        b1, b2 = nonzero(), nonzero()
        p = _n2_point(b1, -2.0 / b1, (2.0, 3.0))
        q = _n2_point(b2, -2.0 / b2, (2.0, 3.0))
        try:
            k = cover.transporter(p, q)
            generic_fail += np.linalg.norm(cover.zd_act(k, p).x - q.x) > 1e-8
        except NoSolution:
            generic_fail += 1
    records.append(CheckRecord(
        "n2-generic-single-orbit", samples, generic_fail, 0,
        {"orbit_count": decomp.generic_counts(((1.0,), (2.0, 3.0))).orbit_count},
    ))

    # n = 3: counts only, not certified
    data = decomp.RegularDecompositionData(((1,), (1, 1), (1, 1, 1)))
    report = []
    for shared in ((1, 0), (0, 1), (1, 1), (0, 2)):
        p = sampling.sample_cover_point(3, data, rng, shared=shared)
        gc = decomp.generic_counts(p.z)
        report.append({"shared": list(shared), "j": list(gc.j), "orbit_count": gc.orbit_count})
    records.append(CheckRecord(
        "n3-orbit-count-report", len(report), 0, 0, {"certified": False, "fibers": report},
    ))
    return records


def check_dimensions(max_n=5):
    """Atlas rows against the dimension formula and ``dim Z_D = n choose 2``."""
    bad_dim = bad_zd = count = 0
    for n in range(1, max_n + 1):
        for row in decomp.atlas(n):
            dim_z = sum(len(p) for p in row["stratum"])
            bad_dim += row["dim_X"] != dim_z + n * n - comb(n + 1, 2)
            bad_zd += row["dim_ZD"] != comb(n, 2)
            count += 1
    return [
        CheckRecord("stratum-dimension-formula", count, bad_dim, 0),
        CheckRecord("zd-dimension", count, bad_zd, 0),
    ]


def _scoped(n, samples):
    """Keyword overrides for the checks when the caller pins ``n`` or the sample count."""
    def kw(kind, **defaults):
        out = dict(defaults)
        if samples is not None and "samples" in defaults:
            out["samples"] = samples
        if n is not None:
            if kind == "ns":
                out["ns"] = (n,)
            elif kind == "max_n":
                out["max_n"] = n
        return out
    return kw


def _suites(n=None, samples=None):
    kw = _scoped(n, samples)
    return {
        "poisson": lambda s: check_poisson(s, **kw("ns", samples=50, ns=(3, 4, 5))),
        "ranks": lambda s: check_ranks(s, **kw("ns", samples=50, ns=(3, 4, 5))),
        "lagrangian": lambda s: check_lagrangian(s, **kw("ns", samples=50, ns=(3, 4, 5))),
        "flows": lambda s: check_flows(s, **kw("ns", samples=10, ns=(3, 4))),
        "kw-inverse": lambda s: check_kw_inverse(s, **kw("ns", samples=100, ns=(2, 3, 4, 5, 6))),
        "covering": lambda s: check_covering(s, **kw("max_n", max_n=4)),
        "lift": lambda s: check_lift(s, **kw("ns", samples=50, ns=(3, 4, 5))),
        "zd-action": lambda s: check_zd_action(s, **kw("max_n", samples=25, max_n=4)),
        "transitivity": lambda s: check_transitivity(s, **kw("max_n", samples=25, max_n=4)),
        "orbit-count": lambda s: check_orbit_count(s, **kw("none", samples=20)),
        "dimensions": lambda s: check_dimensions(**kw("max_n", max_n=5)),
    }


SUITES = tuple(_suites()) + ("all",)


def run_suite(name="all", seed=0, n=None, samples=None):
    """Run one named suite (or ``all``) and collect a report."""
    suites = _suites(n, samples)
    if name != "all" and name not in suites:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    start = time.perf_counter()
    records = []
    for key in suites if name == "all" else [name]:
        for rec in suites[key](seed):
            rec.name = f"{key}/{rec.name}"
            records.append(rec)
    return VerificationReport(name, seed, records, time.perf_counter() - start)
