"""Noise injection at a target SNR and SNR / SNR-improvement metrics.

Conventions
-----------
* Signal power is the variance (mean-removed mean square), so a DC offset
  in a recording does not count as signal.
* All decibel figures use ``10 * log10``.
* Gaussian noise comes from numpy's Philox4x32 counter-based generator
  seeded with the 64-bit seed of a :class:`~brt.types.NoiseSpec`; variates
  are drawn with numpy's ziggurat normal sampler. Output for a given seed is
  fixed within one numpy release.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import IdenticalSignals, MismatchedLengths, ZeroPowerBaseline
from .types import NoiseSpec, Signal


def _samples(x) -> np.ndarray:
    return x.samples if isinstance(x, Signal) else np.asarray(x, dtype=np.float64)


def _check_lengths(*arrays: np.ndarray) -> None:
    if len({a.shape for a in arrays}) != 1:
        raise MismatchedLengths(f"signals must have equal lengths, got {[a.size for a in arrays]}")


def signal_power(signal) -> float:
    """Variance of the samples."""
    return float(np.var(_samples(signal)))


def noise_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def add_white_gaussian(baseline: Signal, spec: NoiseSpec) -> Signal:
    """Add i.i.d. zero-mean Gaussian noise so that the SNR is ``spec.target_snr_db``.

    The noise variance is ``signal_power(baseline) / 10 ** (snr / 10)``.
    """
    power = signal_power(baseline)
    if power <= 0:
        raise ZeroPowerBaseline("cannot set an SNR relative to a constant baseline")
    sigma = math.sqrt(power / 10 ** (spec.target_snr_db / 10))
    noise = noise_generator(spec.seed).standard_normal(len(baseline))
    return baseline.with_samples(baseline.samples + sigma * noise)


def snr_db(baseline, corrupted) -> float:
    """SNR of ``corrupted`` against ``baseline``: baseline variance over mean-square error, in dB."""
    b, c = _samples(baseline), _samples(corrupted)
    _check_lengths(b, c)
    power = signal_power(b)
    if power <= 0:
        raise ZeroPowerBaseline("baseline has zero power")
    err = float(np.mean((c - b) ** 2))
    if err == 0:
        raise IdenticalSignals("corrupted signal equals the baseline; SNR is infinite")
    return 10 * math.log10(power / err)


def snr_improvement(noisy, baseline, denoised) -> float:
    """SNR improvement in dB of ``denoised`` over ``noisy``, both measured against ``baseline``.

    ``10 * log10(sum((noisy - baseline)^2) / sum((denoised - baseline)^2))``.
    Returns ``math.inf`` when the denoised signal reproduces the baseline
    exactly; callers that persist results should check ``math.isinf``.
    """
    f, fb, fd = _samples(noisy), _samples(baseline), _samples(denoised)
    _check_lengths(f, fb, fd)
    before = float(np.sum((f - fb) ** 2))
    after = float(np.sum((fd - fb) ** 2))
    if after == 0:
        return math.inf
    if before == 0:
        return -math.inf
    return 10 * math.log10(before / after)
