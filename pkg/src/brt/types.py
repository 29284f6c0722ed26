"""Shared domain types and configuration validation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    InvalidSignal,
    LambdaCountMismatch,
    MismatchedLengths,
    NonPositiveLambda,
    ScaleCountTooSmall,
    WindowTooSmall,
)

#: Kernel window half-width used when none is given (seconds).
DEFAULT_WINDOW_SECONDS = 0.1
#: Number of scales used when none is given.
DEFAULT_N_SCALES = 6


def _frozen_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != 1:
        raise InvalidSignal(f"{name} must be one-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True, eq=False)
class Signal:
    """Uniformly sampled, real-valued, single-channel signal.

    Samples are copied into a read-only float64 array on construction.
    """

    samples: np.ndarray
    sample_rate_hz: float

    def __post_init__(self):
        samples = _frozen_array(self.samples, "samples")
        if samples.size < 2:
            raise InvalidSignal(f"signal needs at least 2 samples, got {samples.size}")
        if not np.all(np.isfinite(samples)):
            bad = int(np.flatnonzero(~np.isfinite(samples))[0])
            raise InvalidSignal(f"non-finite sample at index {bad}")
        rate = float(self.sample_rate_hz)
        if not (math.isfinite(rate) and rate > 0):
            raise InvalidSignal(f"sample rate must be positive and finite, got {self.sample_rate_hz!r}")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate_hz", rate)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        """Sample times in seconds, starting at zero."""
        return np.arange(len(self)) / self.sample_rate_hz

    @property
    def duration(self) -> float:
        return len(self) / self.sample_rate_hz

    def std(self) -> float:
        return float(np.std(self.samples))

    def with_samples(self, samples) -> "Signal":
        """Return a new signal at the same rate holding ``samples``."""
        return Signal(samples, self.sample_rate_hz)


@dataclass(frozen=True)
class BrtConfig:
    """Parameters of the residual cascade.

    ``lambdas[j]`` is the Gaussian range-kernel bandwidth of cascade step
    ``j`` (amplitude units), so there are ``n_scales - 1`` of them.
    ``window_seconds`` is the half-width of the time neighbourhood that
    enters each kernel-regression sum.
    """

    n_scales: int
    lambdas: tuple[float, ...]
    window_seconds: float = DEFAULT_WINDOW_SECONDS

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(float(v) for v in self.lambdas))

    @classmethod
    def for_signal(
        cls,
        signal: Signal,
        n_scales: int = DEFAULT_N_SCALES,
        window_seconds: float = DEFAULT_WINDOW_SECONDS,
        lambda_multiplier: float = 1.0,
    ) -> "BrtConfig":
        """Default configuration: every bandwidth equals ``lambda_multiplier`` times the signal SD."""
        lam = lambda_multiplier * signal.std()
        return cls(n_scales=n_scales, lambdas=(lam,) * max(n_scales - 1, 0), window_seconds=window_seconds)

    def window_radius(self, sample_rate_hz: float) -> int:
        """Half-width of the kernel window in samples (nearest integer, halves round up, at least 1)."""
        return max(1, _round_half_up(self.window_seconds * sample_rate_hz))

    def to_dict(self) -> dict:
        return {
            "n_scales": self.n_scales,
            "lambdas": list(self.lambdas),
            "window_seconds": self.window_seconds,
        }


def validate_config(config: BrtConfig, signal: Signal) -> int:
    """Check ``config`` against ``signal`` and return the window radius in samples.

    Raises
    ------
    ScaleCountTooSmall
        ``n_scales < 2``.
    LambdaCountMismatch
        ``len(lambdas) != n_scales - 1``.
    NonPositiveLambda
        Any bandwidth is not a positive finite number.
    WindowTooSmall
        ``window_seconds`` is not positive or spans less than one sample.
    """
    if int(config.n_scales) != config.n_scales or config.n_scales < 2:
        raise ScaleCountTooSmall(f"n_scales must be an integer >= 2, got {config.n_scales}")
    if len(config.lambdas) != config.n_scales - 1:
        raise LambdaCountMismatch(
            f"expected {config.n_scales - 1} lambdas for {config.n_scales} scales, got {len(config.lambdas)}"
        )
    for j, lam in enumerate(config.lambdas):
        if not (math.isfinite(lam) and lam > 0):
            raise NonPositiveLambda(f"lambda[{j}] must be positive and finite, got {lam}")
    if not (math.isfinite(config.window_seconds) and config.window_seconds > 0):
        raise WindowTooSmall(f"window_seconds must be positive, got {config.window_seconds}")
    if _round_half_up(config.window_seconds * signal.sample_rate_hz) < 1:
        raise WindowTooSmall(
            f"window of {config.window_seconds} s is shorter than one sample at {signal.sample_rate_hz} Hz"
        )
    return config.window_radius(signal.sample_rate_hz)


@dataclass(frozen=True, eq=False)
class ResidualStack:
    """Residual signals r_1..r_n, finest scale first.

    ``residuals`` is a read-only ``(n, length)`` array; iterating the stack
    yields one :class:`Signal` per scale.
    """

    residuals: np.ndarray
    sample_rate_hz: float
    config: BrtConfig | None = field(default=None)

    def __post_init__(self):
        try:
            arr = np.array(self.residuals, dtype=np.float64, copy=True)
        except ValueError as exc:
            raise MismatchedLengths(f"residuals have inconsistent lengths: {exc}") from None
        if arr.ndim != 2:
            raise MismatchedLengths(f"residuals must form an (n, length) array, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise InvalidSignal("a residual stack needs at least one scale")
        if arr.shape[1] < 2:
            raise InvalidSignal(f"residuals need at least 2 samples, got {arr.shape[1]}")
        if not np.all(np.isfinite(arr)):
            raise InvalidSignal("residual stack contains non-finite values")
        rate = float(self.sample_rate_hz)
        if not (math.isfinite(rate) and rate > 0):
            raise InvalidSignal(f"sample rate must be positive and finite, got {self.sample_rate_hz!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "residuals", arr)
        object.__setattr__(self, "sample_rate_hz", rate)

    @classmethod
    def from_signals(cls, signals: Sequence[Signal], config: BrtConfig | None = None) -> "ResidualStack":
        if not signals:
            raise InvalidSignal("a residual stack needs at least one scale")
        rates = {s.sample_rate_hz for s in signals}
        if len(rates) != 1:
            raise MismatchedLengths(f"residuals disagree on sample rate: {sorted(rates)}")
        lengths = {len(s) for s in signals}
        if len(lengths) != 1:
            raise MismatchedLengths(f"residuals disagree on length: {sorted(lengths)}")
        return cls(np.vstack([s.samples for s in signals]), rates.pop(), config)

    @property
    def n_scales(self) -> int:
        return self.residuals.shape[0]

    @property
    def source_length(self) -> int:
        return self.residuals.shape[1]

    def __len__(self) -> int:
        return self.n_scales

    def __getitem__(self, j: int) -> Signal:
        return Signal(self.residuals[j], self.sample_rate_hz)

    def __iter__(self) -> Iterator[Signal]:
        for j in range(self.n_scales):
            yield self[j]

    def partial_sum(self, start: int) -> Signal:
        """Sum of residuals from 0-based scale index ``start`` to the coarsest.

        ``partial_sum(j - 1)`` is the smoothed signal entering cascade step j.
        """
        if not 0 <= start < self.n_scales:
            raise IndexError(f"scale index {start} out of range for {self.n_scales} scales")
        total = np.zeros(self.source_length)
        for r in self.residuals[start:]:
            total += r
        return Signal(total, self.sample_rate_hz)


@dataclass(frozen=True)
class DenoiseReport:
    """Per-scale thresholds and zeroed-sample counts from one denoising pass.

    When the coarsest scale is left untouched its threshold is reported as 0.
    """

    thresholds: tuple[float, ...]
    zeroed_counts: tuple[int, ...]
    snri_db: float | None = None
    coarsest_thresholded: bool = False

    def __post_init__(self):
        if len(self.thresholds) != len(self.zeroed_counts):
            raise MismatchedLengths("thresholds and zeroed_counts must have one entry per scale")
        if any(t < 0 for t in self.thresholds):
            raise ValueError("thresholds must be non-negative")
        if any(c < 0 for c in self.zeroed_counts):
            raise ValueError("zeroed counts must be non-negative")

    @property
    def n_scales(self) -> int:
        return len(self.thresholds)

    def to_dict(self) -> dict:
        out = {
            "n_scales": self.n_scales,
            "thresholds": list(self.thresholds),
            "zeroed_counts": list(self.zeroed_counts),
            "coarsest_thresholded": self.coarsest_thresholded,
        }
        if self.snri_db is not None:
            out["snri_db"] = self.snri_db if math.isfinite(self.snri_db) else None
            out["snri_status"] = "ok" if math.isfinite(self.snri_db) else "perfect_denoising"
        return out


@dataclass(frozen=True)
class NoiseSpec:
    """Target SNR (dB) plus the seed that makes the contamination reproducible."""

    target_snr_db: float
    seed: int = 0

    def __post_init__(self):
        if not math.isfinite(self.target_snr_db):
            raise ValueError(f"target SNR must be finite, got {self.target_snr_db}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        object.__setattr__(self, "seed", int(self.seed))
