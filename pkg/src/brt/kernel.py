"""Nadaraya-Watson smoothing with a Gaussian range kernel over a local time window.

Each output sample is a weighted mean of the input samples within
``window_radius`` positions of it, weighted by how close their amplitudes are:

    y[t] = sum_i K(x[t] - x[i]) x[i] / sum_i K(x[t] - x[i]),   K(d) = exp(-d^2 / lam^2)

with ``i`` running over ``[t - w, t + w]`` clipped to the signal. The time
window is a hard box: every neighbour inside it enters with its range weight
alone, neighbours outside it do not enter at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateWeights, NonPositiveLambda, WindowTooSmall
from .types import Signal


@dataclass(frozen=True)
class KernelStepParams:
    """Bandwidth (amplitude units) and window half-width (samples) of one smoothing step."""

    lam: float
    window_radius: int

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise NonPositiveLambda(f"kernel bandwidth must be positive and finite, got {self.lam}")
        if int(self.window_radius) != self.window_radius:
            raise ConfigError(f"window radius must be an integer, got {self.window_radius}")
        if self.window_radius < 1:
            raise WindowTooSmall(f"window radius must be >= 1 sample, got {self.window_radius}")
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "window_radius", int(self.window_radius))


def nw_smooth_array(x: np.ndarray, lam: float, window_radius: int) -> np.ndarray:
    """Array-level kernel regression; see :func:`nw_smooth`.

    Accumulates one window offset at a time, from ``-w`` to ``+w``, so each
    output sample sums its neighbours in ascending index order. That keeps
    the result bit-identical to a straightforward per-sample double loop
    written with the same arithmetic.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    lam2 = lam * lam
    num = np.zeros(n)
    den = np.zeros(n)
    reach = min(window_radius, n - 1)
    for k in range(-reach, reach + 1):
        # positions t in [lo, hi) have neighbour t + k inside the signal
        lo = max(0, -k)
        hi = min(n, n - k)
        centre = x[lo:hi]
        neighbour = x[lo + k : hi + k]
        d = centre - neighbour
        weight = np.exp(-(d * d) / lam2)
        num[lo:hi] += weight * neighbour
        den[lo:hi] += weight
    if not np.all(den > 0):
        raise DegenerateWeights("kernel weights summed to zero; the centre sample should always contribute 1")
    return num / den


def nw_smooth(signal: Signal, params: KernelStepParams) -> Signal:
    """Smooth ``signal`` by windowed range-kernel regression.

    Parameters
    ----------
    signal : Signal
        Input to smooth.
    params : KernelStepParams
        Kernel bandwidth and window half-width.

    Returns
    -------
    Signal
        Same length and rate. Every sample is a convex combination of the
        input samples in its window, so it stays inside their range;
        constant signals are fixed points.
    """
    return signal.with_samples(nw_smooth_array(signal.samples, params.lam, params.window_radius))
