import numpy as np
import pytest

from gzcover import cover, decomp, gz_core, sampling
from gzcover.decomp import RegularDecompositionData as D
from gzcover.errors import SamplingFailure


def test_same_seed_same_sample():
    a = sampling.sample_cover_point(4, seed=123)
    b = sampling.sample_cover_point(4, seed=123)
    assert np.array_equal(a.x, b.x) and a.z == b.z
    c = sampling.sample_cover_point(4, seed=124)
    assert not np.array_equal(a.x, c.x)


def test_sample_strongly_regular_example():
    data = D(((1,), (1, 1)))
    x = sampling.sample_strongly_regular(2, data, seed=1)
    assert gz_core.is_strongly_regular(x).is_sreg
    assert decomp.in_tower(x, data)


@pytest.mark.parametrize("n", range(1, 7))
def test_samples_are_certified_and_bounded(n):
    rng = np.random.default_rng(n)
    for _ in range(3):
        data = sampling.random_stratum(n, rng)
        p = sampling.sample_cover_point(n, data, seed=rng)
        assert p.stratum == data
        cover.validate_point(p)
        assert np.linalg.norm(p.x) <= 25


def test_shared_eigenvalues_engineer_non_generic_fibers():
    p = sampling.sample_cover_point(3, seed=8, shared=(1, 1))
    counts = decomp.generic_counts(p.z)
    assert counts.j == (1, 1) and counts.orbit_count == 4
    p = sampling.sample_cover_point(3, seed=8)
    assert decomp.generic_counts(p.z).generic


def test_unit_norm_and_rescale():
    p = sampling.sample_cover_point(3, seed=2, unit_norm=True)
    assert np.linalg.norm(p.x) == pytest.approx(1.0)
    cover.validate_point(p)
    q = sampling.rescale(p, 3.0)
    cover.validate_point(q)


def test_balance_preserves_cutoff_spectra():
    p = sampling.sample_cover_point(4, seed=6, move=False)
    q = sampling.balance(p)
    assert gz_core.kw_map(q.x).distance(gz_core.kw_map(p.x)) < 1e-10


def test_impossible_requests_fail():
    with pytest.raises(SamplingFailure):
        sampling.sample_eigenvalues(D(((1,), (1, 1))), np.random.default_rng(0), shared=(2,))
    with pytest.raises(SamplingFailure):
        sampling.sample_cover_point(5, seed=0, max_norm=1e-3)


def test_zd_element_box():
    rng = np.random.default_rng(0)
    data = D(((1,), (2,), (2, 1)))
    k = sampling.random_zd_element(data, rng, 0.25)
    for s, t in k.levels:
        assert np.all(np.abs(np.log(np.abs(s))) <= 0.25)
        assert np.all(np.abs(t.real) <= 0.25) and np.all(np.abs(t.imag) <= 0.25)
    assert [len(s) for s, _ in k.levels] == [1, 1]
    assert [len(t) for _, t in k.levels] == [0, 1]
