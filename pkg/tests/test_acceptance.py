"""
The eleven acceptance criteria, each at its stated tolerance and sample size.

Every test records one PASS/FAIL line, printed in the terminal summary (and
on stdout with ``-s``).  Running this file as a script prints the same lines.
"""

import pytest

from gzcover import verify

from conftest import ACCEPTANCE_LINES

SEED = 0


def _report(number, title, records):
    ok = all(r.passed for r in records)
    worst = "; ".join(f"{r.name} {r.max_residual:.2e}/{r.tolerance:.0e}" for r in records)
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} [{worst}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    failed = [r.line() for r in records if not r.passed]
    assert ok, "\n".join(failed)


def test_criterion_01_poisson_commutativity():
    # n = 3, 4, 5 with 50 matrices each, all index pairs
    _report(1, "Poisson commutativity", verify.check_poisson(SEED, samples=50, ns=(3, 4, 5)))


def test_criterion_02_strong_regularity_ranks():
    _report(2, "strong-regularity ranks", verify.check_ranks(SEED, samples=50, ns=(3, 4, 5)))


def test_criterion_03_lagrangian():
    # same samples as criterion 2
    _report(3, "Lagrangian property", verify.check_lagrangian(SEED, samples=50, ns=(3, 4, 5)))


def test_criterion_04_flow_exactness():
    _report(4, "flow exactness", verify.check_flows(SEED, ns=(3, 4)))


def test_criterion_05_kostant_wallach_inverse():
    _report(5, "Kostant-Wallach inverse", verify.check_kw_inverse(SEED, samples=100, ns=(2, 3, 4, 5, 6)))


def test_criterion_06_covering_degree():
    _report(6, "covering degree", verify.check_covering(SEED, max_n=4))


def test_criterion_07_lift_identity():
    _report(7, "lift identity", verify.check_lift(SEED, samples=50, ns=(3, 4, 5)))


def test_criterion_08_zd_action():
    _report(8, "Z_D group law and freeness", verify.check_zd_action(SEED, samples=25, max_n=4))


def test_criterion_09_simple_transitivity():
    _report(9, "simple transitivity and trivialization", verify.check_transitivity(SEED, samples=25, max_n=4))


def test_criterion_10_orbit_count():
    _report(10, "orbit count at n = 2", verify.check_orbit_count(SEED, samples=20))


def test_criterion_11_dimension_formula():
    _report(11, "dimension formula", verify.check_dimensions(max_n=5))


if __name__ == "__main__":
    # conftest (and hypothesis) are already imported here, so skip the rewrite warning
    raise SystemExit(pytest.main([__file__, "-q", "-s", "-W", "ignore::pytest.PytestAssertRewriteWarning"]))
