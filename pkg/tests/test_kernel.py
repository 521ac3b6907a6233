import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from barneszeta import kernel as kn
from barneszeta.errors import DomainError

weights = st.floats(0.3, 3.0)


def test_kernel_value_at_one():
    p = kn.BarnesParams((1.0, 1.0), 1.0)
    e = math.e
    assert kn.kernel_full(p, 1.0) == pytest.approx(e / (e - 1) ** 2, rel=1e-15)


def test_kernel_decays_like_exp():
    p = kn.BarnesParams((1.0, 1.0), 1.0)
    t = np.array([20.0, 40.0, 80.0, 400.0])
    assert np.allclose(kn.kernel_full(p, t) * np.exp(t), 1.0, rtol=1e-8)
    assert kn.kernel_full(p, 2000.0) == 0.0


@settings(max_examples=200, deadline=None)
@given(st.lists(weights, min_size=1, max_size=3), st.floats(0.1, 3.0), st.floats(0.01, 20.0))
def test_kernel_product_identity(w, a, t):
    p = kn.BarnesParams(tuple(w), a)
    back = kn.kernel_full(p, t) * math.prod(math.expm1(x * t) for x in w) * math.exp(-(sum(w) - a) * t)
    assert back == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("t", [0.0, -1.0, float("nan")])
def test_nonpositive_t_rejected(t):
    with pytest.raises(DomainError):
        kn.kernel_full(kn.BarnesParams((1.0,), 1.0), t)


def test_params_validation():
    with pytest.raises(DomainError):
        kn.BarnesParams((1.0, 2.0), 0.0)
    with pytest.raises(DomainError):
        kn.BarnesParams((1.0, -2.0), 1.0)


@pytest.mark.parametrize("r,N", [(1, -1), (1, 2), (2, -2), (2, 0), (2, 3), (3, -3), (3, 1)])
def test_subtracted_plus_head_is_full(r, N):
    p = kn.BarnesParams((0.7, 1.3, 2.1)[:r], 0.45)
    c = kn.laurent_coefficients(p, N + r)
    for t in np.geomspace(0.05, 5.0, 15):
        head = sum(c[k] * t ** (k - r) for k in range(N + r + 1))
        assert kn.kernel_subtracted(p, N, t) + head == pytest.approx(kn.kernel_full(p, t), rel=1e-12)


@pytest.mark.parametrize("N", [-2, -1, 0, 2, 5])
def test_subtracted_continuous_at_switch(N):
    p = kn.BarnesParams((1.2, 0.9), 0.6)
    t_sw = kn.switch_point(p.w)
    below = kn.kernel_subtracted(p, N, t_sw * (1 - 1e-13))
    above = kn.kernel_subtracted(p, N, t_sw * (1 + 1e-13))
    scale = kn.kernel_full(p, t_sw)
    assert abs(below - above) <= 1e-12 * scale


@pytest.mark.parametrize("N", [-2, -1, 0, 1, 3])
def test_subtracted_vanishes_to_order(N):
    p = kn.BarnesParams((1.0, 1.5), 0.8)
    ts = np.geomspace(1e-5, 1e-3, 10)
    v = np.abs(kn.kernel_subtracted(p, N, ts))
    slope = np.polyfit(np.log(ts), np.log(v), 1)[0]
    assert slope == pytest.approx(N + 1, abs=0.05)


def test_subtraction_order_validated():
    p = kn.BarnesParams((1.0, 1.0), 0.5)
    with pytest.raises(DomainError):
        kn.kernel_subtracted(p, -3, 1.0)
    with pytest.raises(DomainError):
        kn.kernel_subtracted(p, 0.5, 1.0)


@pytest.mark.parametrize("w,a", [((1.0, 1.0), 0.3), ((1.0, 1.0), 1.7), ((0.5, 2.5), 1.2)])
def test_g2_sign_near_zero(w, a):
    p = kn.BarnesParams(w, a)
    assert np.sign(kn.G2(p, 1e-6)) == np.sign(w[0] + w[1] - 2 * a)


def test_g2_closed_form():
    p = kn.BarnesParams((0.8, 1.7), 0.9)
    w1, w2, a = 0.8, 1.7, 0.9
    for t in (0.3, 1.0, 3.0, 7.0):
        ref = w1 * w2 * t * t * math.exp((w1 + w2 - a) * t) - math.expm1(w1 * t) * math.expm1(w2 * t)
        assert kn.g2(p, t) == pytest.approx(ref, rel=1e-11)


def test_g2_vanishes_to_third_order():
    p = kn.BarnesParams((1.0, 2.0), 0.4)
    ts = np.geomspace(1e-4, 1e-2, 8)
    v = np.abs(kn.g2(p, ts))
    assert np.polyfit(np.log(ts), np.log(v), 1)[0] == pytest.approx(3.0, abs=0.05)
    d1, d2 = kn.g2_derivatives(p, 1e-8)
    assert abs(d1) < 1e-12 and abs(d2) < 1e-6


@pytest.mark.parametrize("t", [0.2, 1.0, 2.5])
def test_g2_derivatives_by_differences(t):
    p = kn.BarnesParams((0.9, 1.4), 0.7)
    h = 1e-3 * t
    g = lambda x: kn.g2(p, x)
    d1, d2 = kn.g2_derivatives(p, t)

    def central(h):
        return (g(t + h) - g(t - h)) / (2 * h), (g(t + h) - 2 * g(t) + g(t - h)) / h**2

    (a1, a2), (b1, b2) = central(h), central(h / 2)
    assert (4 * b1 - a1) / 3 == pytest.approx(d1, rel=1e-8)
    assert (4 * b2 - a2) / 3 == pytest.approx(d2, rel=1e-7)


def test_h2_family_consistency():
    p = kn.BarnesParams((1.1, 0.6), 0.5)
    W = sum(p.w)
    t = 0.8
    h0, h1, h2, h3 = kn.h2_family(p, t)
    d1, _ = kn.g2_derivatives(p, t)
    assert h0 == pytest.approx(math.exp((p.a - W) * t) * d1, rel=1e-13)
    eps = 1e-5
    fam = lambda x: kn.h2_family(p, x)
    assert (fam(t + eps)[0] - fam(t - eps)[0]) / (2 * eps) == pytest.approx(h1, rel=1e-8)
    assert (fam(t + eps)[1] - fam(t - eps)[1]) / (2 * eps) == pytest.approx(h2, rel=1e-8)
    assert (fam(t + eps)[2] - fam(t - eps)[2]) / (2 * eps) == pytest.approx(h3, rel=1e-8)


@settings(max_examples=100, deadline=None)
@given(weights, weights, st.floats(0.05, 4.0))
def test_h2_second_derivative_at_zero(w1, w2, a):
    # h2''(0) = 3 w1 w2 (w1 + w2 - 2a)
    p = kn.BarnesParams((w1, w2), a)
    h0, h1, h2, _ = kn.h2_family(p, 1e-12)
    assert abs(h0) < 1e-9 and abs(h1) < 1e-9
    assert h2 == pytest.approx(3 * w1 * w2 * (w1 + w2 - 2 * a), rel=1e-6, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(weights, weights, st.floats(0.05, 4.0), st.floats(1e-3, 10.0))
def test_h2_third_derivative_negative(w1, w2, a, t):
    assert kn.h2_family(kn.BarnesParams((w1, w2), a), t)[3] < 0


@settings(max_examples=60, deadline=None)
@given(weights, weights, st.floats(0.05, 0.95))
def test_single_sign_change_below_boundary(w1, w2, f):
    p = kn.BarnesParams((w1, w2), f * (w1 + w2) / 2)
    t0 = kn.find_t0(p)
    grid = np.geomspace(1e-6, 50 / min(w1, w2, p.a), 400)
    sg = np.sign(kn.G2(p, grid))
    changes = np.nonzero(np.diff(sg))[0]
    assert len(changes) == 1 and sg[0] > 0
    assert grid[changes[0]] <= t0 <= grid[changes[0] + 1]


@settings(max_examples=60, deadline=None)
@given(weights, weights, st.floats(1.0, 3.0))
def test_negative_at_and_above_boundary(w1, w2, f):
    p = kn.BarnesParams((w1, w2), f * (w1 + w2) / 2)
    grid = np.geomspace(1e-6, 50 / min(w1, w2, p.a), 400)
    assert np.all(kn.G2(p, grid) < 0)
    with pytest.raises(DomainError):
        kn.find_t0(p)


@pytest.mark.parametrize("c", [0.5, 2.0])
def test_t0_scale_equivariance(c):
    p = kn.BarnesParams((1.0, 1.6), 0.5)
    assert kn.find_t0(p.scaled(c)) == pytest.approx(kn.find_t0(p) / c, rel=1e-10)


def test_t0_near_boundary_below_switch_point():
    p = kn.BarnesParams((1.0, 1.0), 0.999)
    t0 = kn.find_t0(p)
    assert t0 < kn.switch_point(p.w)
    assert kn.G2(p, 0.99 * t0) > 0 > kn.G2(p, 1.01 * t0)


def test_pair_only_functions():
    p = kn.BarnesParams((1.0, 1.0, 1.0), 0.5)
    for f in (kn.G2, kn.g2, kn.g2_derivatives, kn.h2_family):
        with pytest.raises(DomainError):
            f(p, 1.0)


def test_array_shape_preserved():
    p = kn.BarnesParams((1.0, 2.0), 0.5)
    t = np.linspace(0.01, 3.0, 12).reshape(3, 4)
    assert kn.kernel_subtracted(p, 1, t).shape == (3, 4)
    assert isinstance(kn.kernel_subtracted(p, 1, 0.5), float)
