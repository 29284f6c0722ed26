"""Bayesian residual transform.

Multi-scale decomposition of a 1-D signal into residuals produced by a
cascade of Gaussian range-kernel (Nadaraya-Watson) smoothings, its exact
inverse, a per-scale MAD hard-threshold denoiser and an SNR benchmark harness.
"""

__version__ = "0.1.0"

from .bench import SweepConfig, SweepResult, run_sweep, summarize
from .denoise import PROBIT_3_4, denoise_signal, hard_threshold, mad, noise_threshold
from .kernel import KernelStepParams, nw_smooth
from .metrics import add_white_gaussian, signal_power, snr_db, snr_improvement
from .synth import SynthKind, SynthSpec, periodic_signal, piecewise_regular_signal, synthesize
from .transform import forward_brt, inverse_brt
from .types import BrtConfig, DenoiseReport, NoiseSpec, ResidualStack, Signal, validate_config

__all__ = [
    "BrtConfig",
    "DenoiseReport",
    "KernelStepParams",
    "NoiseSpec",
    "PROBIT_3_4",
    "ResidualStack",
    "Signal",
    "SweepConfig",
    "SweepResult",
    "SynthKind",
    "SynthSpec",
    "add_white_gaussian",
    "denoise_signal",
    "forward_brt",
    "hard_threshold",
    "inverse_brt",
    "mad",
    "noise_threshold",
    "nw_smooth",
    "periodic_signal",
    "piecewise_regular_signal",
    "run_sweep",
    "signal_power",
    "snr_db",
    "snr_improvement",
    "summarize",
    "synthesize",
    "validate_config",
]
