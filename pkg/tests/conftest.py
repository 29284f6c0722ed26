from __future__ import annotations

import math

import numpy as np
import pytest

from brt import Signal


def naive_nw(x, lam, w):
    """Per-sample double loop over the clipped window, ascending neighbour index."""
    x = [float(v) for v in x]
    n = len(x)
    out = []
    for t in range(n):
        num = 0.0
        den = 0.0
        for i in range(max(0, t - w), min(n, t + w + 1)):
            d = x[t] - x[i]
            # numpy's exp, not math.exp: the two can differ in the last ulp
            k = float(np.exp(-(d * d) / (lam * lam)))
            num += k * x[i]
            den += k
        out.append(num / den)
    return np.array(out)


def normal_cdf(z: float) -> float:
    return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def make_signal(values, rate=128.0) -> Signal:
    return Signal(np.asarray(values, dtype=float), rate)


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def criterion(request, capsys):
    """Return ``report(ok, detail)`` that logs one PASS/FAIL line for the calling criterion."""
    name = request.node.name

    def report(ok: bool, detail: str) -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
        request.config.stash[ACCEPTANCE_KEY].append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
