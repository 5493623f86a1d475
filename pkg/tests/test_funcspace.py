import math

import numpy as np
import pytest
from hypothesis import given

from genvar import errors
from genvar.funcspace import (
    corpus,
    make_sampled,
    pointwise_product,
    power_phi,
    sup_norm,
)
from genvar.rvar import check_phi_monotone

from conftest import sampled_functions


def test_minimal_identity():
    f = make_sampled([0, 1], [0, 1])
    assert len(f) == 2 and f.length == 1.0


@pytest.mark.parametrize("xs, ys, exc", [
    ([0, 0], [1, 2], errors.NonMonotoneGridError),
    ([0, 1], [1], errors.LengthMismatchError),
    ([0], [1], errors.LengthMismatchError),
    ([0, 1], [0, math.inf], errors.NonFiniteValueError),
    ([0, math.nan], [0, 1], errors.NonFiniteValueError),
    ([1, 0], [0, 1], errors.NonMonotoneGridError),
])
def test_make_sampled_rejects(xs, ys, exc):
    with pytest.raises(exc):
        make_sampled(xs, ys)


def test_immutable():
    f = make_sampled([0, 0.5, 1], [0, 1, 0])
    with pytest.raises(ValueError):
        f.ys[0] = 3.0


def test_product_examples():
    f = corpus("identity", n=2)
    one = f.with_values(np.ones(3))
    assert np.array_equal(pointwise_product(f, one).ys, f.ys)
    tent = make_sampled([0, 0.5, 1], [0, 1, 0])
    assert np.array_equal(pointwise_product(tent, tent).ys, [0, 1, 0])


def test_product_counterexample_is_cos():
    g = corpus("reciprocal_cos", m=2, n=6)
    h = corpus("reciprocal", m=2, n=6)
    fg = pointwise_product(g, h)
    expected = np.r_[0.0, np.cos(np.pi / g.xs[1:])]
    np.testing.assert_allclose(fg.ys, expected, rtol=0, atol=1e-14)


def test_product_grid_mismatch():
    with pytest.raises(errors.GridMismatchError):
        pointwise_product(make_sampled([0, 1], [0, 1]), make_sampled([0, 2], [0, 1]))


@pytest.mark.parametrize("ys, expected", [([0, 1, 0], 1.0), ([-3, 2], 3.0)])
def test_sup_norm(ys, expected):
    assert sup_norm(make_sampled(np.arange(len(ys)), ys)) == expected


def test_sup_norm_identity():
    assert sup_norm(corpus("identity", n=4)) == 1.0


def test_corpus_identity():
    f = corpus("identity", n=4, a=0, b=1)
    assert f.xs.tolist() == [0, 0.25, 0.5, 0.75, 1]
    assert f.ys.tolist() == f.xs.tolist()


def test_corpus_reciprocal_cos():
    f = corpus("reciprocal_cos", m=2, n=2)
    np.testing.assert_allclose(f.xs, [0, 0.25, 1 / 3, 0.5, 1], rtol=1e-15)
    np.testing.assert_allclose(f.ys, [0, 0.25, -1 / 3, 0.5, -1], rtol=0, atol=1e-15)


def test_corpus_power_seq():
    f = corpus("power_seq", r=2, m=1, n=2)
    np.testing.assert_allclose(f.xs, [1 / 3, 1 / 2, 1], rtol=1e-15)
    np.testing.assert_allclose(f.ys, [-1 / 9, 1 / 4, -1], rtol=1e-15)


def test_corpus_alternating():
    assert corpus("alternating", n=4).ys.tolist() == [1, 0, 1, 0, 1]


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("p", [0.25, 0.5, 0.75])
def test_walk_is_phi_monotone_exactly(seed, p):
    phi = power_phi(1.5, p)
    f = corpus("phi_monotone_walk", seed=seed, phi=phi, n=40)
    assert check_phi_monotone(f, phi, tol=0.0).passed


def test_corpus_errors():
    with pytest.raises(errors.ValidationError):
        corpus("nope")
    with pytest.raises(errors.ValidationError):
        corpus("identity", n=0)
    with pytest.raises(errors.ValidationError):
        corpus("reciprocal_cos", m=1, n=3)
    with pytest.raises(errors.ValidationError):
        corpus("identity", bogus=1)


def test_identity_nondecreasing():
    assert np.all(np.diff(corpus("identity", n=9, a=-2, b=3).ys) > 0)


@given(sampled_functions(), sampled_functions())
def test_product_algebra(f, g):
    g = f.with_values(g.ys[: len(f)] if len(g) >= len(f) else np.resize(g.ys, len(f)))
    assert np.array_equal(pointwise_product(f, g).ys, pointwise_product(g, f).ys)
    one = f.with_values(np.ones(len(f)))
    assert np.array_equal(pointwise_product(f, one).ys, f.ys)
    assert sup_norm(pointwise_product(f, g)) <= sup_norm(f) * sup_norm(g)
