"""Deterministic synthetic test signals.

Two waveforms, both sampled at ``t = k / sample_rate_hz``:

``periodic``
    ``A * (sin(2 pi 1.7 t) + 0.5 sin(2 pi 4.1 t))``.

``piecewise``
    Five segments of equal duration (breaks at 20 %, 40 %, 60 %, 80 % of the
    length, see :func:`piecewise_breaks`):

    1. plateau at ``-0.5 A``
    2. linear ramp from ``-0.5 A`` up to ``+0.5 A`` (continuous at its start)
    3. one full cycle of ``0.8 A sin`` over the segment, starting at 0
       (a step of ``0.5 A`` down from the ramp's end)
    4. plateau at ``+A`` (a step up from the burst's end at 0)
    5. plateau at ``-0.75 A`` (a step of ``1.75 A`` down)

Neither generator is random; ``seed`` is carried for API symmetry.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .types import Signal

PERIODIC_FREQS_HZ = (1.7, 4.1)
PERIODIC_WEIGHTS = (1.0, 0.5)

PIECEWISE_FRACTIONS = (0.2, 0.4, 0.6, 0.8)


class SynthKind(str, enum.Enum):
    PERIODIC = "periodic"
    PIECEWISE_REGULAR = "piecewise"


@dataclass(frozen=True)
class SynthSpec:
    kind: SynthKind = SynthKind.PERIODIC
    length: int = 1280
    sample_rate_hz: float = 128.0
    seed: int = 0
    amplitude: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", SynthKind(self.kind))
        if int(self.length) != self.length or self.length < 2:
            raise ValueError(f"length must be an integer >= 2, got {self.length}")
        if not self.amplitude > 0:
            raise ValueError(f"amplitude must be positive, got {self.amplitude}")
        if not self.sample_rate_hz > 0:
            raise ValueError(f"sample rate must be positive, got {self.sample_rate_hz}")


def periodic_signal(spec: SynthSpec) -> Signal:
    if spec.kind is not SynthKind.PERIODIC:
        raise ValueError(f"periodic_signal needs kind=periodic, got {spec.kind.value}")
    t = np.arange(spec.length) / spec.sample_rate_hz
    x = np.zeros(spec.length)
    for f, w in zip(PERIODIC_FREQS_HZ, PERIODIC_WEIGHTS):
        x += w * np.sin(2 * np.pi * f * t)
    return Signal(spec.amplitude * x, spec.sample_rate_hz)


def piecewise_breaks(length: int) -> tuple[int, ...]:
    """Start indices of segments 2..5 for a signal of ``length`` samples."""
    return tuple(int(math.floor(f * length)) for f in PIECEWISE_FRACTIONS)


def piecewise_step_indices(length: int) -> tuple[int, ...]:
    """Indices ``k`` with a jump of at least ``0.5 A`` between ``x[k]`` and ``x[k + 1]``."""
    b = piecewise_breaks(length)
    return (b[1] - 1, b[2] - 1, b[3] - 1)


def piecewise_regular_signal(spec: SynthSpec) -> Signal:
    if spec.kind is not SynthKind.PIECEWISE_REGULAR:
        raise ValueError(f"piecewise_regular_signal needs kind=piecewise, got {spec.kind.value}")
    n = spec.length
    b1, b2, b3, b4 = piecewise_breaks(n)
    x = np.empty(n)
    x[:b1] = -0.5
    ramp = b2 - b1
    if ramp:
        x[b1:b2] = -0.5 + np.arange(1, ramp + 1) / ramp
    burst = b3 - b2
    if burst:
        x[b2:b3] = 0.8 * np.sin(2 * np.pi * np.arange(burst) / burst)
    x[b3:b4] = 1.0
    x[b4:] = -0.75
    return Signal(spec.amplitude * x, spec.sample_rate_hz)


def synthesize(spec: SynthSpec) -> Signal:
    if spec.kind is SynthKind.PERIODIC:
        return periodic_signal(spec)
    return piecewise_regular_signal(spec)
