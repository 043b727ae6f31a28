from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gzcover import gz_core as gz
from gzcover import hessenberg
from gzcover.errors import DimensionMismatch, IndexOutOfRange, NotStronglyRegular
from gzcover.sampling import sample_strongly_regular

from conftest import random_complex

X = np.array([[1, 1], [0, 2]], dtype=complex)
E3 = np.diag(np.ones(2), -1)


def test_cutoff_examples():
    assert np.array_equal(gz.cutoff([[1, 2], [3, 4]], 1), [[1]])
    m = np.array([[1, 2, 0], [3, 4, 0], [0, 0, 9]])
    assert np.array_equal(gz.cutoff(m, 2), [[1, 2], [3, 4]])
    assert np.array_equal(gz.cutoff(m, 3), m)
    with pytest.raises(IndexOutOfRange):
        gz.cutoff(m, 4)


def test_gz_function_examples():
    assert gz.gz_function(np.eye(3), 2, 1) == 2
    assert gz.gz_function(X, 2, 2) == 5
    for i, j in gz.gz_indices(3):
        assert gz.gz_function(E3, i, j) == 0
    with pytest.raises(IndexOutOfRange):
        gz.gz_function(X, 1, 2)


def test_gz_gradient_matches_finite_difference(rng):
    x = random_complex(rng, 3)
    d = random_complex(rng, 3)
    h = 1e-6
    for i, j in gz.gz_indices(3):
        fd = (gz.gz_function(x + h * d, i, j) - gz.gz_function(x - h * d, i, j)) / (2 * h)
        # the trace-form gradient: df(x)[d] = Tr(grad . d)
        assert abs(fd - np.trace(gz.gz_gradient(x, i, j) @ d)) < 1e-6


def test_kw_map_examples():
    assert gz.kw_map(X) == gz.GZValue(((-1,), (2, -3)))
    assert gz.kw_map(np.zeros((2, 2))) == gz.GZValue(((0,), (0, 0)))
    assert gz.kw_map([[1, 0], [1, 2]]) == gz.kw_map(X)


def test_gz_value_validation():
    with pytest.raises(DimensionMismatch):
        gz.GZValue(((1,), (1,)))
    a = gz.GZValue(((1,),))
    with pytest.raises(DimensionMismatch):
        a.distance(gz.GZValue(((1,), (1, 2))))


def test_kw_map_equal_iff_cutoff_spectra_agree(rng):
    # diagonal conjugation keeps every cutoff spectrum
    x = random_complex(rng, 4)
    d = np.diag(np.exp(random_complex(rng, 4)[0]))
    y = d @ x @ np.linalg.inv(d)
    assert gz.kw_map(x).distance(gz.kw_map(y)) < 1e-10
    # a generic conjugation moves the cutoff spectra
    g = random_complex(rng, 4) + 2 * np.eye(4)
    w = g @ x @ np.linalg.inv(g)
    assert gz.kw_map(x).distance(gz.kw_map(w)) > 1e-3
    assert np.allclose(gz.kw_map(w).levels[-1], gz.kw_map(x).levels[-1])


def test_gz_field_examples(rng):
    assert np.allclose(gz.gz_field(X, 1, 1), [[0, 1], [0, 0]])
    d = np.diag(random_complex(rng, 4)[0])
    for i, j in gz.gz_indices(4):
        assert np.allclose(gz.gz_field(d, i, j), 0)
    x = random_complex(rng, 4)
    for j in range(1, 5):
        assert np.linalg.norm(gz.gz_field(x, 4, j)) < 1e-10 * np.linalg.norm(x) ** j


def test_gz_flow_examples():
    t = 0.3 - 0.4j
    assert np.allclose(gz.gz_flow(X, 1, 1, t), [[1, np.exp(t)], [0, 2]])
    assert np.array_equal(gz.gz_flow(X, 2, 2, 0), X)


@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 4), data=st.data())
def test_flow_invariants(seed, n, data):
    rng = np.random.default_rng(seed)
    x = random_complex(rng, n)
    x /= np.linalg.norm(x)
    i = data.draw(st.integers(1, n))
    j = data.draw(st.integers(1, i))
    t = complex(*rng.uniform(-1, 1, 2)) / np.sqrt(2)
    y = gz.gz_flow(x, i, j, t)
    assert gz.kw_map(y).distance(gz.kw_map(x)) < 1e-8
    # the level-i cutoff is fixed by its own flow
    assert np.allclose(y[:i, :i], x[:i, :i], atol=1e-10)
    h = 1e-5
    fd = (gz.gz_flow(x, i, j, h) - gz.gz_flow(x, i, j, -h)) / (2 * h)
    field = gz.gz_field(x, i, j)
    assert np.linalg.norm(fd - field) <= 1e-6 * max(1.0, np.linalg.norm(field))


def test_flows_commute(rng):
    x = random_complex(rng, 4)
    x /= np.linalg.norm(x)
    for (i, j), (k, l) in [((1, 1), (3, 2)), ((2, 2), (3, 3)), ((2, 1), (3, 1))]:
        a = gz.gz_flow(gz.gz_flow(x, i, j, 0.4), k, l, -0.7j)
        b = gz.gz_flow(gz.gz_flow(x, k, l, -0.7j), i, j, 0.4)
        assert np.linalg.norm(a - b) < 1e-8


@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 5))
def test_poisson_commutativity(seed, n):
    x = random_complex(np.random.default_rng(seed), n)
    for fa in gz.gz_indices(n):
        for fb in gz.gz_indices(n):
            scale = np.linalg.norm(x) * np.linalg.norm(gz.gz_gradient(x, *fa)) * np.linalg.norm(gz.gz_gradient(x, *fb))
            assert abs(gz.lie_poisson_bracket(fa, fb, x)) <= 1e-8 * max(scale, 1.0)


def test_bracket_is_not_trivially_zero(rng):
    # a non-GZ function must be able to have a nonzero bracket, otherwise the test above is vacuous
    x = random_complex(rng, 3)
    ga = gz.gz_gradient(x, 1, 1)
    gb = np.zeros((3, 3), dtype=complex)
    gb[0, 1] = 1
    assert abs(np.trace(x @ (ga @ gb - gb @ ga))) > 1e-3


def test_is_strongly_regular_examples():
    assert gz.is_strongly_regular(X).is_sreg
    cert = gz.is_strongly_regular(np.diag([1.0, 2.0]))
    assert not cert.is_sreg and cert.intersection_ranks == (1,)
    assert cert.per_level_regular == (True, True)
    c = gz.kw_map(random_complex(np.random.default_rng(3), 4))
    assert gz.is_strongly_regular(hessenberg.phi_inverse(c)).is_sreg


def test_non_regular_cutoff_is_not_sreg():
    x = np.diag([1.0, 1.0, 2.0]) + np.diag([0.0, 1.0], -1)
    cert = gz.is_strongly_regular(x)
    assert not cert.is_sreg and not cert.per_level_regular[1]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tangent_ranks_at_sreg_points(n):
    x = sample_strongly_regular(n, seed=n)
    _, rank = gz.a_tangent_span(x)
    assert rank == comb(n, 2)
    assert gz.phi_jacobian_rank(x) == comb(n + 1, 2)
    pairing, lagrangian = gz.kks_isotropy_check(x)
    assert pairing <= 1e-8 and lagrangian


def test_tangent_ranks_degenerate_points():
    assert gz.a_tangent_span(np.diag([1.0, 2.0, 3.0]))[1] == 0
    assert gz.phi_jacobian_rank(np.zeros((3, 3))) == 3
    assert gz.phi_jacobian_rank(2.5 * np.eye(4)) == 4


def test_kks_on_companion_hessenberg():
    # companion-type Hessenberg: unit subdiagonal, last column free
    x = np.diag(np.ones(3), -1).astype(complex)
    x[:, -1] = [0.5, -1.0, 2.0, 0.25j]
    pairing, lagrangian = gz.kks_isotropy_check(x)
    assert lagrangian and pairing < 1e-8
    with pytest.raises(NotStronglyRegular):
        gz.kks_isotropy_check(np.diag([1.0, 2.0, 3.0]))


def test_kks_pairing_of_a_field_with_itself_is_zero(rng):
    x = random_complex(rng, 3)
    g = gz.gz_gradient(x, 2, 2)
    assert np.trace(x @ (g @ g - g @ g)) == 0


def test_sreg_characterization_on_samples():
    # rank conditions and the certificate agree on sampled points of every kind
    for seed in range(6):
        x = sample_strongly_regular(3, seed=seed)
        assert gz.is_strongly_regular(x).is_sreg
        assert gz.phi_jacobian_rank(x) == 6
    # and fail together on a non-sreg point
    d = np.diag([1.0, 2.0, 3.0]).astype(complex)
    assert not gz.is_strongly_regular(d).is_sreg
    assert gz.phi_jacobian_rank(d) < 6
