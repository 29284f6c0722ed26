"""Forward and inverse residual transform.

The forward transform runs a cascade of kernel-regression smoothings. Step j
smooths the running estimate and keeps what the smoothing removed as the
residual at scale j; the last smoothed signal becomes the coarsest residual.
The residuals therefore telescope back to the input, and the inverse is a
plain sum.
"""

from __future__ import annotations

import numpy as np

from .errors import MismatchedLengths
from .kernel import KernelStepParams, nw_smooth_array
from .types import BrtConfig, ResidualStack, Signal, validate_config


def cascade(signal: Signal, config: BrtConfig):
    """Yield the running smoothed estimates, starting with the input itself.

    Yields ``n_scales`` arrays; the ``j``-th (0-based) is the sum of
    residuals ``j..n-1`` of the forward transform.
    """
    radius = validate_config(config, signal)
    current = signal.samples
    yield current
    for lam in config.lambdas:
        step = KernelStepParams(lam, radius)
        current = nw_smooth_array(current, step.lam, step.window_radius)
        yield current


def forward_brt(signal: Signal, config: BrtConfig) -> ResidualStack:
    """Decompose ``signal`` into ``config.n_scales`` residuals, finest first.

    Raises the :mod:`brt.errors` configuration errors if ``config`` does not
    fit the signal.
    """
    validate_config(config, signal)
    residuals = np.empty((config.n_scales, len(signal)))
    steps = cascade(signal, config)
    previous = next(steps)
    for j, smoothed in enumerate(steps):
        residuals[j] = previous - smoothed
        previous = smoothed
    residuals[-1] = previous
    return ResidualStack(residuals, signal.sample_rate_hz, config)


def inverse_brt(stack: ResidualStack) -> Signal:
    """Reconstruct the signal as the pointwise sum of all residuals."""
    residuals = stack.residuals
    if residuals.ndim != 2:
        raise MismatchedLengths(f"expected an (n, length) residual array, got shape {residuals.shape}")
    total = np.zeros(residuals.shape[1])
    for r in residuals:
        total += r
    return Signal(total, stack.sample_rate_hz)
