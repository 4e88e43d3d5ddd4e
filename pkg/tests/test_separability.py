import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conic_kernels.core import Dataset, NormExponent, nearest_anchors
from conic_kernels.separability import Condition, check_coordinatewise, check_multi_anchor, check_single_anchor

from synth import axis_gap, ring

P_ALL = [NormExponent.P1, NormExponent.P2, NormExponent.PInf]


def circle(r, n=12):
    t = np.linspace(0, 2 * np.pi, n, endpoint=False)
    return r * np.column_stack([np.cos(t), np.sin(t)])


def test_rings_second_condition():
    X = np.vstack([circle(1.0), circle(3.0)])
    y = np.repeat([1, -1], 12)
    rep = check_single_anchor(Dataset(X, y), (0, 0), "2")
    assert rep.separable and rep.condition is Condition.PLUS_BELOW
    assert rep.nu == pytest.approx(1.0) and rep.mu == pytest.approx(9.0)
    assert rep.witness.w.tolist() == [0, 0, -1]


def test_interleaved_radii_not_separable():
    X = np.vstack([circle(1.0), circle(3.0), circle(2.0)])
    y = np.array([1] * 24 + [-1] * 12)
    rep = check_single_anchor(Dataset(X, y), (0, 0), "2")
    assert not rep.separable and rep.witness is None and rep.condition is Condition.NONE


def test_outside_inside_first_condition():
    X = np.vstack([circle(3.0), circle(1.0)])
    y = np.repeat([1, -1], 12)
    data = Dataset(X, y)
    rep = check_single_anchor(data, (0, 0), "1")
    assert rep.condition is Condition.PLUS_ABOVE
    assert np.all(y * rep.witness.decision_function(rep.map_spec.transform(X)) > 0)


def test_single_class_error():
    with pytest.raises(ValueError):
        check_single_anchor(Dataset([[0.0], [1.0]], [1, 1]), (0,), "1")


def test_coordinatewise_examples():
    X = np.array([[0.0, 5.0], [0.0, -1.0], [2.0, 5.0], [-1.0, -1.0]])
    y = np.array([-1, -1, 1, 1])
    rep = check_coordinatewise(Dataset(X, y), (0, 0), "1")
    assert rep.separable and rep.dimension == 1
    assert rep.witness.w.tolist() == [0, 0, 1, 0]
    both = np.array([[0.0, 0.0], [3.0, 3.0]])
    rep2 = check_coordinatewise(Dataset(both, [-1, 1]), (0, 0), "2")
    assert rep2.dimension == 1
    none = np.array([[0.0, 1.0], [1.0, 0.0], [1.0, 1.0], [0.0, 0.0]])
    rep3 = check_coordinatewise(Dataset(none, [1, 1, -1, -1]), (0, 0), "inf")
    assert not rep3.separable and rep3.witness is None and rep3.dimension is None


def test_multi_anchor_class_samples_as_anchors():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(20, 3))
    y = np.repeat([1, -1], 10)
    rep = check_multi_anchor(Dataset(X, y), X[y < 0], "2")
    assert rep.separable and rep.condition is Condition.PLUS_ABOVE and rep.nu == 0


def test_multi_anchor_singleton_equals_single():
    data, a = ring(3, NormExponent.P1)
    r1 = check_single_anchor(data, a, "1")
    r2 = check_multi_anchor(data, a[None, :], "1")
    assert r1.as_dict() == r2.as_dict()


def test_multi_anchor_equidistant_violation():
    # min over positives equals max over negatives: strictness fails
    X = np.array([[1.0, 0.0], [2.0, 0.0], [0.5, 0.0], [0.0, 1.0]])
    y = np.array([1, 1, -1, -1])
    anchors = np.array([[0.0, 0.0], [10.0, 10.0]])
    d = nearest_anchors(X, anchors, "2")[1]
    assert d[y > 0].min() == d[y < 0].max()
    rep = check_multi_anchor(Dataset(X, y), anchors, "2")
    assert not rep.separable and rep.gap == 0


def test_multi_anchor_empty():
    with pytest.raises(ValueError):
        check_multi_anchor(Dataset([[0.0], [1.0]], [1, -1]), np.empty((0, 1)), "1")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31 - 1), st.sampled_from(P_ALL))
def test_ring_witness_soundness(seed, p):
    data, a = ring(seed, p)
    rep = check_single_anchor(data, a, p)
    assert rep.separable
    margins = data.y * rep.witness.decision_function(rep.map_spec.transform(data.X))
    assert np.all(margins >= 0.5 * abs(rep.gap) * (1 - 1e-12))
    bad, a2 = ring(seed, p, violate=True)
    assert not check_single_anchor(bad, a2, p).separable


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31 - 1), st.sampled_from(P_ALL))
def test_axis_gap_witness_soundness(seed, p):
    data, a, ell = axis_gap(seed)
    rep = check_coordinatewise(data, a, p)
    assert rep.separable and rep.dimension == ell + 1
    assert np.all(data.y * rep.witness.decision_function(rep.map_spec.transform(data.X)) > 0)
    bad, a2, _ = axis_gap(seed, violate=True)
    assert not check_coordinatewise(bad, a2, p).separable


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31 - 1), st.sampled_from(P_ALL))
def test_adding_anchors_never_increases_distance(seed, p):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(15, 3))
    A = rng.normal(size=(3, 3))
    extra = np.vstack([A, rng.normal(size=(2, 3))])
    assert np.all(nearest_anchors(X, extra, p)[1] <= nearest_anchors(X, A, p)[1])


def test_report_text_block():
    X = np.vstack([circle(1.0), circle(3.0)])
    rep = check_single_anchor(Dataset(X, np.repeat([1, -1], 12)), (0, 0), "2")
    lines = rep.to_text().splitlines()
    assert lines[0] == "separable: true"
    assert any(line.startswith("witness_nonzero: 3:-1") for line in lines)
