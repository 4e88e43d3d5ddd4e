import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conic_kernels.core import NormExponent, p_distances
from conic_kernels.feature_maps import Coordinatewise, SingleDistance, map_sample
from conic_kernels.kernels import RBF, ConicCoordinatewise, ConicSingle, Linear, Poly, eval_kernel, gram_matrix

P_ALL = [NormExponent.P1, NormExponent.P2, NormExponent.PInf]


def all_specs(d, rng):
    a = rng.normal(size=d)
    specs = [Linear(), RBF(0.3), Poly(2), Poly(3), Poly(4)]
    for p in P_ALL:
        specs += [ConicSingle(p, a), ConicCoordinatewise(p, a)]
    return specs


def test_eval_examples():
    assert eval_kernel(RBF(3.7), (1, 2), (1, 2)) == 1.0
    assert eval_kernel(Poly(2), (1, 1), (1, 1)) == 9.0
    assert eval_kernel(ConicSingle("1", (0, 0)), (1, 0), (0, 1)) == 1.0


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        eval_kernel(Linear(), (1, 2), (1, 2, 3))
    with pytest.raises(ValueError):
        eval_kernel(ConicSingle("2", (0, 0, 0)), (1, 2), (1, 2))
    with pytest.raises(ValueError):
        gram_matrix(Linear(), np.ones((2, 2)), np.ones((2, 3)))


def test_invalid_hyper():
    with pytest.raises(ValueError):
        RBF(0.0)
    with pytest.raises(ValueError):
        Poly(0)


def test_linear_gram_identity():
    assert np.array_equal(gram_matrix(Linear(), np.eye(2)), np.eye(2))


@pytest.mark.parametrize("p", P_ALL)
def test_conic_gram_rank_one_update(p):
    rng = np.random.default_rng(4)
    X = rng.normal(size=(12, 3))
    a = rng.normal(size=3)
    v = p_distances(X, a, p)
    assert np.allclose(gram_matrix(ConicSingle(p, a), X), X @ X.T + np.outer(v, v), rtol=0, atol=1e-12)


def test_rbf_three_point_psd():
    X = np.random.default_rng(5).normal(size=(3, 4))
    G = gram_matrix(RBF(0.5), X)
    assert np.linalg.eigvalsh(G).min() >= -1e-10 * np.trace(G)


def test_gram_entries_match_eval():
    rng = np.random.default_rng(6)
    X, Z = rng.normal(size=(5, 3)), rng.normal(size=(4, 3))
    for spec in all_specs(3, rng):
        G = gram_matrix(spec, X, Z)
        ref = np.array([[eval_kernel(spec, x, z) for z in Z] for x in X])
        assert np.allclose(G, ref, rtol=1e-12, atol=1e-12), spec.name


def test_gram_symmetric_and_diag():
    rng = np.random.default_rng(7)
    X = rng.normal(size=(9, 4))
    for spec in all_specs(4, rng):
        G = gram_matrix(spec, X)
        assert np.array_equal(G, G.T)
        assert np.allclose(spec.diag(X), np.diag(G), rtol=1e-12, atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(1, 6))
def test_symmetry_of_eval(seed, d):
    rng = np.random.default_rng(seed)
    x, z = rng.normal(size=d), rng.normal(size=d)
    for spec in all_specs(d, rng):
        kxz, kzx = eval_kernel(spec, x, z), eval_kernel(spec, z, x)
        if isinstance(spec, RBF):
            assert abs(kxz - kzx) <= 1e-15
        else:
            assert kxz == kzx


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**31 - 1), st.sampled_from(P_ALL), st.integers(1, 6))
def test_kernel_equals_map_inner_product(seed, p, d):
    rng = np.random.default_rng(seed)
    x, z, a = rng.normal(size=(3, d))
    single = map_sample(SingleDistance(p, a[None, :]), x) @ map_sample(SingleDistance(p, a[None, :]), z)
    coord = map_sample(Coordinatewise(p, a), x) @ map_sample(Coordinatewise(p, a), z)
    assert abs(eval_kernel(ConicSingle(p, a), x, z) - single) <= 1e-10
    assert abs(eval_kernel(ConicCoordinatewise(p, a), x, z) - coord) <= 1e-10


def test_rbf_scale_sanity():
    rng = np.random.default_rng(8)
    X = rng.normal(size=(20, 3))
    c, gamma = 3.0, 0.7
    assert np.allclose(gram_matrix(RBF(gamma), X), gram_matrix(RBF(gamma / c**2), c * X), rtol=0, atol=1e-12)
