"""CSV reading and writing for signals and residual stacks.

Signal files hold one sample per row, either a single amplitude column or
``time_seconds, amplitude``. A non-numeric first row is treated as a header
and lines starting with ``#`` are skipped. Values are written with 17
significant digits so files round-trip exactly.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import (
    InconsistentSampleRate,
    MissingSampleRate,
    NonUniformSampling,
    ParseError,
)
from .types import BrtConfig, ResidualStack, Signal

UNIFORM_RTOL = 1e-6


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def read_table(path: str | Path) -> tuple[list[str] | None, np.ndarray]:
    """Parse a numeric CSV into ``(header, rows)``; row numbers in errors are 1-based file lines."""
    header = None
    rows: list[list[float]] = []
    width = None
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, raw in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in raw]
            if not cells or all(c == "" for c in cells) or cells[0].startswith("#"):
                continue
            if header is None and not rows and not any(_is_number(c) for c in cells):
                header = cells
                continue
            values = []
            for col, token in enumerate(cells, start=1):
                try:
                    v = float(token)
                except ValueError:
                    raise ParseError(f"cannot parse {token!r} as a number", lineno, col) from None
                if not math.isfinite(v):
                    raise ParseError(f"non-finite value {token!r}", lineno, col)
                values.append(v)
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise ParseError(f"expected {width} columns, found {len(values)}", lineno)
            rows.append(values)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    return header, np.array(rows, dtype=np.float64)


def rate_from_times(times: np.ndarray) -> float:
    """Sample rate implied by a uniformly spaced, increasing time column."""
    if times.size < 2:
        raise NonUniformSampling("need at least two time stamps to infer a sample rate")
    steps = np.diff(times)
    if np.any(steps <= 0):
        bad = int(np.flatnonzero(steps <= 0)[0])
        raise NonUniformSampling(f"time column is not strictly increasing at sample {bad + 1}")
    spacing = (times[-1] - times[0]) / (times.size - 1)
    worst = float(np.max(np.abs(steps - spacing)))
    if worst > UNIFORM_RTOL * spacing:
        raise NonUniformSampling(f"time steps deviate from uniform spacing by up to {worst:.3g} s")
    return 1.0 / spacing


def load_signal(path: str | Path, sample_rate_hz: float | None = None) -> Signal:
    """Load a one- or two-column signal CSV.

    With a time column the rate is inferred from it; if ``sample_rate_hz`` is
    also given the two must agree to 1e-6 relative, and the given rate wins.
    """
    _, table = read_table(path)
    ncol = table.shape[1]
    if ncol == 1:
        if sample_rate_hz is None:
            raise MissingSampleRate(f"{path}: single-column file needs an explicit sample rate")
        rate = float(sample_rate_hz)
        amplitudes = table[:, 0]
    elif ncol == 2:
        inferred = rate_from_times(table[:, 0])
        if sample_rate_hz is not None:
            if abs(inferred - sample_rate_hz) > UNIFORM_RTOL * sample_rate_hz:
                raise InconsistentSampleRate(
                    f"{path}: time column implies {inferred:.9g} Hz but {sample_rate_hz} Hz was given"
                )
            rate = float(sample_rate_hz)
        else:
            rate = inferred
        amplitudes = table[:, 1]
    else:
        raise ParseError(f"{path}: expected 1 or 2 columns, found {ncol}")
    return Signal(amplitudes, rate)


def write_signal(signal: Signal, path: str | Path, with_time: bool = True) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if with_time:
            writer.writerow(["t", "amplitude"])
            for t, x in zip(signal.times, signal.samples):
                writer.writerow([_fmt(t), _fmt(x)])
        else:
            writer.writerow(["amplitude"])
            writer.writerows([_fmt(x)] for x in signal.samples)


def sidecar_path(path: str | Path) -> Path:
    p = Path(path)
    return p.with_name(p.name + ".json")


def write_stack(stack: ResidualStack, path: str | Path) -> None:
    """Write ``t,r1..rn`` as CSV plus a JSON sidecar (``<path>.json``) with the rate and config."""
    n = stack.n_scales
    times = np.arange(stack.source_length) / stack.sample_rate_hz
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t"] + [f"r{j + 1}" for j in range(n)])
        for i, t in enumerate(times):
            writer.writerow([_fmt(t)] + [_fmt(v) for v in stack.residuals[:, i]])
    meta = {
        "sample_rate_hz": stack.sample_rate_hz,
        "n_scales": n,
        "length": stack.source_length,
        "config": stack.config.to_dict() if stack.config is not None else None,
    }
    sidecar_path(path).write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")


def load_stack(path: str | Path) -> ResidualStack:
    """Read a stack written by :func:`write_stack`; the sidecar is optional."""
    _, table = read_table(path)
    if table.shape[1] < 2:
        raise ParseError(f"{path}: a stack file needs a time column and at least one residual column")
    rate = None
    config = None
    side = sidecar_path(path)
    if side.exists():
        meta = json.loads(side.read_text(encoding="utf-8"))
        rate = meta.get("sample_rate_hz")
        if meta.get("config"):
            c = meta["config"]
            config = BrtConfig(c["n_scales"], tuple(c["lambdas"]), c["window_seconds"])
    if rate is None:
        rate = rate_from_times(table[:, 0])
    return ResidualStack(table[:, 1:].T, rate, config)
