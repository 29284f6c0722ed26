"""Monte-Carlo SNR-improvement sweeps.

A sweep contaminates every baseline at every SNR level ``trials_per_level``
times, denoises each noisy copy under every (scale count, bandwidth
multiplier) combination and records the SNR improvement.

Seeding
-------
The noise seed of a trial is a pure function of ``(base_seed, baseline
index, level index, trial index)`` (:func:`trial_seed`), so any single
record can be recomputed in isolation. The same noisy realisation is shared
by all scale counts and bandwidths at that position, which makes
differences between cells paired comparisons.

Record layout
-------------
Records are ordered by level, scale count, multiplier (each in config
order), then baseline and trial. Within a cell the ``trial`` column counts
``baseline_index * trials_per_level + trial_index``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .denoise import denoise_signal
from .errors import BrtError, ConfigError, EmptyResult, SweepCellError, ZeroPowerBaseline
from .metrics import add_white_gaussian, signal_power, snr_improvement
from .types import DEFAULT_WINDOW_SECONDS, BrtConfig, NoiseSpec, Signal

RECORD_FIELDS = ("snr_db", "n_scales", "lambda_mult", "trial", "seed", "snri_db")


def default_levels(start: float = 12.0, stop: float = 2.5, count: int = 11) -> tuple[float, ...]:
    return tuple(float(v) for v in np.linspace(start, stop, count))


@dataclass(frozen=True)
class SweepConfig:
    snr_levels_db: tuple[float, ...] = field(default_factory=default_levels)
    trials_per_level: int = 20
    scale_counts: tuple[int, ...] = (2, 3, 4, 5, 6)
    lambda_multipliers: tuple[float, ...] = (0.5, 1.0, 2.0)
    base_seed: int = 0
    window_seconds: float = DEFAULT_WINDOW_SECONDS

    def __post_init__(self):
        object.__setattr__(self, "snr_levels_db", tuple(float(v) for v in self.snr_levels_db))
        object.__setattr__(self, "scale_counts", tuple(int(v) for v in self.scale_counts))
        object.__setattr__(self, "lambda_multipliers", tuple(float(v) for v in self.lambda_multipliers))
        if not self.snr_levels_db:
            raise ConfigError("at least one SNR level is required")
        if not all(math.isfinite(v) for v in self.snr_levels_db):
            raise ConfigError("SNR levels must be finite")
        if self.trials_per_level < 1:
            raise ConfigError(f"trials_per_level must be >= 1, got {self.trials_per_level}")
        if not self.scale_counts or min(self.scale_counts) < 2:
            raise ConfigError(f"scale counts must be >= 2, got {self.scale_counts}")
        if not self.lambda_multipliers or not all(m > 0 and math.isfinite(m) for m in self.lambda_multipliers):
            raise ConfigError(f"lambda multipliers must be positive, got {self.lambda_multipliers}")
        if not 0 <= self.base_seed < 2**64:
            raise ConfigError(f"base seed must fit in 64 unsigned bits, got {self.base_seed}")

    @property
    def n_cells(self) -> int:
        return len(self.snr_levels_db) * len(self.scale_counts) * len(self.lambda_multipliers)


@dataclass(frozen=True)
class SweepRecord:
    snr_db: float
    n_scales: int
    lambda_mult: float
    trial: int
    seed: int
    snri_db: float

    @property
    def cell(self) -> tuple[float, int, float]:
        return (self.snr_db, self.n_scales, self.lambda_mult)


@dataclass(frozen=True)
class CellSummary:
    snr_db: float
    n_scales: int
    lambda_mult: float
    count: int
    mean_snri_db: float
    std_snri_db: float

    @property
    def cell(self) -> tuple[float, int, float]:
        return (self.snr_db, self.n_scales, self.lambda_mult)


@dataclass(frozen=True)
class SweepResult:
    records: tuple[SweepRecord, ...]
    aggregates: tuple[CellSummary, ...]

    def cell(self, snr_db: float, n_scales: int, lambda_mult: float) -> CellSummary:
        for row in self.aggregates:
            if row.cell == (snr_db, n_scales, lambda_mult):
                return row
        raise KeyError((snr_db, n_scales, lambda_mult))


def trial_seed(base_seed: int, baseline_index: int, level_index: int, trial_index: int) -> int:
    """64-bit noise seed for one trial, hashed from the base seed and indices."""
    seq = np.random.SeedSequence(base_seed, spawn_key=(baseline_index, level_index, trial_index))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def run_trial(
    baseline: Signal,
    snr_db: float,
    seed: int,
    n_scales: int,
    lambda_mult: float,
    window_seconds: float = DEFAULT_WINDOW_SECONDS,
) -> float:
    """Contaminate, denoise with bandwidth ``lambda_mult * SD(noisy)``, return the SNRI."""
    noisy = add_white_gaussian(baseline, NoiseSpec(snr_db, seed))
    config = BrtConfig.for_signal(noisy, n_scales, window_seconds, lambda_mult)
    denoised, _ = denoise_signal(noisy, config)
    return snr_improvement(noisy, baseline, denoised)


def _level_task(args) -> list[tuple[int, int, int, int, int, float]]:
    # One (baseline, level) block; returns (n_idx, m_idx, baseline_idx, trial_idx, seed, snri).
    baseline, b_idx, l_idx, config = args
    level = config.snr_levels_db[l_idx]
    out = []
    for k in range(config.trials_per_level):
        seed = trial_seed(config.base_seed, b_idx, l_idx, k)
        noisy = add_white_gaussian(baseline, NoiseSpec(level, seed))
        for n_idx, n in enumerate(config.scale_counts):
            for m_idx, mult in enumerate(config.lambda_multipliers):
                cell = {"baseline": b_idx, "snr_db": level, "n_scales": n, "lambda_mult": mult, "trial": k}
                try:
                    cfg = BrtConfig.for_signal(noisy, n, config.window_seconds, mult)
                    denoised, _ = denoise_signal(noisy, cfg)
                    snri = snr_improvement(noisy, baseline, denoised)
                except BrtError as exc:
                    raise SweepCellError(cell, exc) from exc
                out.append((n_idx, m_idx, b_idx, k, seed, snri))
    return out


def run_sweep(baselines: Sequence[Signal], config: SweepConfig, workers: int = 1) -> SweepResult:
    """Run the full sweep and aggregate it.

    ``workers > 1`` spreads (baseline, level) blocks over processes; the
    record order is canonical either way.
    """
    if not baselines:
        raise ConfigError("at least one baseline signal is required")
    for i, b in enumerate(baselines):
        if signal_power(b) <= 0:
            raise ZeroPowerBaseline(f"baseline {i} has zero power")

    tasks = [(b, bi, li, config) for li in range(len(config.snr_levels_db)) for bi, b in enumerate(baselines)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_level_task, tasks))
    else:
        blocks = [_level_task(t) for t in tasks]

    rows = []
    for (_, _, li, _), block in zip(tasks, blocks):
        for n_idx, m_idx, b_idx, k, seed, snri in block:
            rows.append(((li, n_idx, m_idx, b_idx, k), seed, snri))
    rows.sort(key=lambda r: r[0])

    trials = config.trials_per_level
    records = tuple(
        SweepRecord(
            snr_db=config.snr_levels_db[li],
            n_scales=config.scale_counts[n_idx],
            lambda_mult=config.lambda_multipliers[m_idx],
            trial=b_idx * trials + k,
            seed=seed,
            snri_db=snri,
        )
        for (li, n_idx, m_idx, b_idx, k), seed, snri in rows
    )
    return SweepResult(records, aggregate(records))


def aggregate(records: Sequence[SweepRecord]) -> tuple[CellSummary, ...]:
    """Mean and population SD of the SNRI per cell, cells in first-seen order."""
    groups: dict[tuple[float, int, float], list[float]] = {}
    for r in records:
        groups.setdefault(r.cell, []).append(r.snri_db)
    out = []
    for (snr, n, mult), values in groups.items():
        v = np.asarray(values)
        out.append(CellSummary(snr, n, mult, v.size, float(np.mean(v)), float(np.std(v))))
    return tuple(out)


def summarize(result: SweepResult) -> list[CellSummary]:
    """One row per swept cell, recomputed from the raw records."""
    if not result.records:
        raise EmptyResult("sweep result has no records")
    return list(aggregate(result.records))


# persistence

def _fmt(x: float) -> str:
    return repr(float(x))


def records_to_csv(records: Sequence[SweepRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RECORD_FIELDS)
    for r in records:
        writer.writerow([_fmt(r.snr_db), r.n_scales, _fmt(r.lambda_mult), r.trial, r.seed, _fmt(r.snri_db)])
    return buf.getvalue()


def write_records_csv(records: Sequence[SweepRecord], path: str | Path) -> None:
    Path(path).write_text(records_to_csv(records), encoding="utf-8")


def read_records_csv(path: str | Path) -> list[SweepRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != RECORD_FIELDS:
            raise ValueError(f"unexpected record header {reader.fieldnames}")
        return [
            SweepRecord(
                snr_db=float(row["snr_db"]),
                n_scales=int(row["n_scales"]),
                lambda_mult=float(row["lambda_mult"]),
                trial=int(row["trial"]),
                seed=int(row["seed"]),
                snri_db=float(row["snri_db"]),
            )
            for row in reader
        ]


def cell_key(snr_db: float, n_scales: int, lambda_mult: float) -> str:
    return f"snr={_fmt(snr_db)}|n={n_scales}|lambda_mult={_fmt(lambda_mult)}"


def _json_float(x: float):
    return x if math.isfinite(x) else str(x)


def aggregates_to_json(rows: Sequence[CellSummary], config: SweepConfig | None = None) -> str:
    payload: dict = {}
    if config is not None:
        payload["config"] = {
            "snr_levels_db": list(config.snr_levels_db),
            "trials_per_level": config.trials_per_level,
            "scale_counts": list(config.scale_counts),
            "lambda_multipliers": list(config.lambda_multipliers),
            "base_seed": config.base_seed,
            "window_seconds": config.window_seconds,
        }
    payload["cells"] = {
        cell_key(*row.cell): {
            "snr_db": row.snr_db,
            "n_scales": row.n_scales,
            "lambda_mult": row.lambda_mult,
            "count": row.count,
            "mean_snri_db": _json_float(row.mean_snri_db),
            "std_snri_db": _json_float(row.std_snri_db),
        }
        for row in rows
    }
    return json.dumps(payload, indent=2)


def write_aggregates_json(rows: Sequence[CellSummary], path: str | Path, config: SweepConfig | None = None) -> None:
    Path(path).write_text(aggregates_to_json(rows, config) + "\n", encoding="utf-8")
