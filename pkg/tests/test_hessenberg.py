import numpy as np
import pytest
from hypothesis import given, strategies as st

from gzcover import cover, decomp, gz_core, hessenberg
from gzcover.decomp import RegularDecompositionData as D
from gzcover.errors import NotGeneric
from gzcover.gz_core import GZValue
from gzcover.sampling import random_zd_element, sample_cover_point

from conftest import random_complex


def test_is_hessenberg_examples():
    assert hessenberg.is_hessenberg([[3, 4], [1, 5]])
    assert not hessenberg.is_hessenberg([[3, 4], [0, 5]])
    companion = np.diag(np.ones(3), -1)
    companion[:, -1] = [1, 2, 3, 4]
    assert hessenberg.is_hessenberg(companion)
    bad = companion.copy()
    bad[3, 0] = 1e-3
    assert not hessenberg.is_hessenberg(bad)


def test_phi_inverse_examples():
    assert np.allclose(hessenberg.phi_inverse(GZValue(((-1,), (2, -3)))), [[1, 0], [1, 2]])
    zero = GZValue(tuple(np.zeros(i) for i in range(1, 5)))
    assert np.array_equal(hessenberg.phi_inverse(zero), np.diag(np.ones(3), -1))


@given(n=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
def test_phi_inverse_roundtrip(n, seed):
    rng = np.random.default_rng(seed)
    c = GZValue(tuple(random_complex(rng, i)[0] for i in range(1, n + 1)))
    x = hessenberg.phi_inverse(c)
    assert hessenberg.is_hessenberg(x, 0.0)
    scale = max(1.0, np.max(np.abs(c.flat())))
    assert gz_core.kw_map(x).distance(c) <= 1e-10 * scale
    assert gz_core.is_strongly_regular(x).is_sreg


@given(n=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
def test_section_is_identity_on_hessenberg(n, seed):
    rng = np.random.default_rng(seed)
    h = np.triu(random_complex(rng, n)) + np.diag(np.ones(n - 1), -1)
    assert np.allclose(hessenberg.hessenberg_section(h), h, atol=1e-10 * max(1.0, np.linalg.norm(h)) ** n)


def test_section_examples(rng):
    assert np.allclose(hessenberg.hessenberg_section([[1, 1], [0, 2]]), [[1, 0], [1, 2]])
    h = hessenberg.phi_inverse(GZValue(((0.5,), (1, -1), (2, 0, 1j))))
    d = np.diag(np.exp(random_complex(rng, 3)[0]))
    assert np.allclose(hessenberg.hessenberg_section(d @ h @ np.linalg.inv(d)), h, atol=1e-10)


def test_trivialize_identity_on_section():
    p = sample_cover_point(3, seed=11, move=False)
    k, x_hess = hessenberg.trivialize(p)
    assert np.allclose(x_hess, p.x, atol=1e-12)
    assert k.is_identity(1e-10)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_trivialize_recovers_k(n):
    rng = np.random.default_rng(n)
    strata = list(decomp.all_regular_data(n))
    for _ in range(4):
        data = strata[int(rng.integers(len(strata)))]
        base = sample_cover_point(n, data, seed=rng, move=False)
        k0 = random_zd_element(data, rng, 0.5)
        p = cover.zd_act(k0, base)
        k, x_hess = hessenberg.trivialize(p)
        assert k.distance(k0) < 1e-8
        assert np.linalg.norm(cover.zd_act(k, base.with_x(x_hess)).x - p.x) < 1e-8


def test_trivialize_is_a_bijection_on_a_fiber():
    # distinct fiber points give distinct k, and each is reached from the section
    rng = np.random.default_rng(5)
    data = D(((1,), (2,), (2, 1)))
    base = sample_cover_point(3, data, seed=rng, move=False)
    ks = []
    for _ in range(25):
        p = cover.zd_act(random_zd_element(data, rng, 0.5), base)
        k, x_hess = hessenberg.trivialize(p)
        assert np.allclose(x_hess, base.x, atol=1e-10)
        ks.append(k)
    for a in range(len(ks)):
        for b in range(a):
            assert ks[a].distance(ks[b]) > 1e-6


def test_trivialize_rejects_non_generic():
    p = sample_cover_point(3, seed=3, shared=(1, 0))
    assert not decomp.generic_counts(p.z).generic
    with pytest.raises(NotGeneric):
        hessenberg.trivialize(p)
