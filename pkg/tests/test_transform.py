import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from brt import BrtConfig, ResidualStack, Signal, forward_brt, inverse_brt
from brt.errors import LambdaCountMismatch, MismatchedLengths, ScaleCountTooSmall
from brt.transform import cascade

from conftest import naive_nw


def _random_config(rng, sig, n=None):
    n = n or int(rng.integers(2, 9))
    lams = tuple(rng.uniform(0.1, 3.0, n - 1) * max(sig.std(), 1e-3))
    return BrtConfig(n, lams, float(rng.uniform(0.02, 0.15)))


def test_constant_signal_residuals():
    sig = Signal(np.full(300, 2.75), 128)
    stack = forward_brt(sig, BrtConfig(6, (0.4,) * 5))
    assert np.all(stack.residuals[:-1] == 0.0)
    assert np.all(stack.residuals[-1] == 2.75)


def test_three_point_two_scale_example():
    sig = Signal([0.0, 1.0, 0.0], 10.0)
    stack = forward_brt(sig, BrtConfig(2, (1.0,), 0.1))
    smooth = naive_nw([0.0, 1.0, 0.0], 1.0, 1)
    assert np.array_equal(stack.residuals[1], smooth)
    assert stack.residuals[1][1] == pytest.approx(1 / (1 + 2 * math.exp(-1)))
    assert np.array_equal(stack.residuals[0], sig.samples - smooth)


def test_returns_n_residuals_with_source_shape(rng):
    sig = Signal(rng.normal(size=500), 200)
    for n in range(2, 9):
        stack = forward_brt(sig, BrtConfig.for_signal(sig, n_scales=n))
        assert stack.residuals.shape == (n, 500)
        assert stack.sample_rate_hz == 200


def test_perfect_reconstruction_length_1028(rng):
    f = Signal(rng.normal(size=1028) * 3 + 1, 128)
    rec = inverse_brt(forward_brt(f, BrtConfig.for_signal(f)))
    assert np.max(np.abs(rec.samples - f.samples)) <= 1e-9 * max(1.0, np.max(np.abs(f.samples)))


@settings(max_examples=60, deadline=None)
@given(
    arrays(np.float64, st.integers(2, 300), elements=st.floats(-1e4, 1e4)),
    st.integers(2, 8),
    st.floats(1e-3, 1e4),
    st.floats(0.01, 0.5),
)
def test_reconstruction_property(x, n, lam, window):
    f = Signal(x, 64.0)
    rec = inverse_brt(forward_brt(f, BrtConfig(n, (lam,) * (n - 1), window)))
    assert np.max(np.abs(rec.samples - x)) <= 1e-9 * max(1.0, np.max(np.abs(x)))


def test_cascade_range_contracts(rng):
    sig = Signal(np.cumsum(rng.normal(size=800)), 128)
    cfg = _random_config(rng, sig, n=7)
    steps = list(cascade(sig, cfg))
    assert len(steps) == 7
    for a, b in zip(steps, steps[1:]):
        assert b.max() <= a.max() and b.min() >= a.min()


def test_shift_equivariance_of_cascade(rng):
    x = rng.normal(size=400)
    cfg = BrtConfig(5, (0.8, 0.8, 0.8, 0.8), 0.1)
    a = forward_brt(Signal(x, 128), cfg).residuals
    b = forward_brt(Signal(x + 5.0, 128), cfg).residuals
    assert np.allclose(b[:-1], a[:-1], atol=1e-9)
    assert np.allclose(b[-1], a[-1] + 5.0, atol=1e-9)


def test_forward_is_bitwise_deterministic(rng):
    sig = Signal(rng.normal(size=600), 128)
    cfg = BrtConfig.for_signal(sig)
    assert forward_brt(sig, cfg).residuals.tobytes() == forward_brt(sig, cfg).residuals.tobytes()


def test_forward_propagates_config_errors():
    sig = Signal([0.0, 1.0, 2.0], 10)
    with pytest.raises(ScaleCountTooSmall):
        forward_brt(sig, BrtConfig(1, ()))
    with pytest.raises(LambdaCountMismatch):
        forward_brt(sig, BrtConfig(3, (1.0,)))


def test_inverse_examples():
    assert np.array_equal(inverse_brt(ResidualStack(np.array([[1.0, 2.0], [3.0, 4.0]]), 1.0)).samples, [4.0, 6.0])
    assert np.array_equal(inverse_brt(ResidualStack(np.zeros((4, 10)), 1.0)).samples, np.zeros(10))


def test_inverse_rejects_ragged_stack():
    with pytest.raises(MismatchedLengths):
        ResidualStack([[1.0, 2.0], [1.0, 2.0, 3.0]], 1.0)
