import json

import numpy as np
import pytest

from brt import SweepConfig, SynthKind, SynthSpec, run_sweep, summarize, synthesize
from brt.bench import (
    RECORD_FIELDS,
    SweepRecord,
    SweepResult,
    aggregate,
    aggregates_to_json,
    read_records_csv,
    records_to_csv,
    run_trial,
    trial_seed,
    write_records_csv,
)
from brt.errors import ConfigError, EmptyResult, ZeroPowerBaseline
from brt import Signal

PERIODIC = synthesize(SynthSpec())


def _baselines(k):
    kinds = list(SynthKind)
    return [
        synthesize(SynthSpec(kinds[i % 2], length=256, amplitude=1.0 + 0.1 * i))
        for i in range(k)
    ]


def test_default_config():
    cfg = SweepConfig()
    assert len(cfg.snr_levels_db) == 11
    assert cfg.snr_levels_db[0] == 12.0 and cfg.snr_levels_db[-1] == 2.5
    assert cfg.trials_per_level == 20
    assert cfg.scale_counts == (2, 3, 4, 5, 6)
    assert cfg.lambda_multipliers == (0.5, 1.0, 2.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"snr_levels_db": ()},
        {"snr_levels_db": (float("nan"),)},
        {"trials_per_level": 0},
        {"scale_counts": (1,)},
        {"lambda_multipliers": (0.0,)},
        {"base_seed": -1},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        SweepConfig(**kwargs)


def test_paper_perturbation_count():
    cfg = SweepConfig(trials_per_level=20, scale_counts=(6,), lambda_multipliers=(1.0,))
    result = run_sweep(_baselines(18), cfg)
    assert len(result.records) == 18 * 11 * 20 == 3960
    assert len(result.aggregates) == 11
    assert all(row.count == 360 for row in result.aggregates)


def test_record_count_formula():
    cfg = SweepConfig(snr_levels_db=(10.0, 5.0), trials_per_level=3, scale_counts=(2, 4), lambda_multipliers=(0.5, 1, 2))
    result = run_sweep(_baselines(2), cfg)
    assert len(result.records) == 2 * 2 * 3 * 2 * 3
    assert len(result.aggregates) == cfg.n_cells == 12


def test_single_record_matches_direct_pipeline():
    cfg = SweepConfig(snr_levels_db=(7.0,), trials_per_level=1, scale_counts=(6,), lambda_multipliers=(1.0,), base_seed=99)
    (rec,) = run_sweep([PERIODIC], cfg).records
    assert rec.seed == trial_seed(99, 0, 0, 0)
    assert rec.snri_db == run_trial(PERIODIC, 7.0, rec.seed, 6, 1.0)


def test_sweep_is_reproducible_and_canonical():
    cfg = SweepConfig(snr_levels_db=(12.0, 3.0), trials_per_level=2, scale_counts=(3, 2), lambda_multipliers=(1.0,), base_seed=5)
    a = run_sweep(_baselines(2), cfg)
    b = run_sweep(_baselines(2), cfg)
    assert records_to_csv(a.records) == records_to_csv(b.records)
    assert [r.cell for r in a.records[:4]] == [(12.0, 3, 1.0)] * 4
    assert [r.trial for r in a.records[:4]] == [0, 1, 2, 3]


def test_parallel_matches_serial():
    cfg = SweepConfig(snr_levels_db=(12.0, 3.0), trials_per_level=2, scale_counts=(2, 6), lambda_multipliers=(1.0,))
    assert records_to_csv(run_sweep(_baselines(2), cfg, workers=2).records) == records_to_csv(
        run_sweep(_baselines(2), cfg).records
    )


def test_aggregates_recomputable():
    cfg = SweepConfig(snr_levels_db=(9.0, 4.0), trials_per_level=4, scale_counts=(2, 3), lambda_multipliers=(1.0,))
    result = run_sweep(_baselines(1), cfg)
    for row in summarize(result):
        vals = [r.snri_db for r in result.records if r.cell == row.cell]
        assert row.mean_snri_db == pytest.approx(sum(vals) / len(vals), rel=1e-12)
    assert summarize(result) == list(result.aggregates)


def test_summarize_examples():
    one = (SweepRecord(5.0, 6, 1.0, 0, 1, 3.0),)
    (row,) = summarize(SweepResult(one, aggregate(one)))
    assert row.mean_snri_db == 3.0 and row.std_snri_db == 0.0
    two = (SweepRecord(5.0, 6, 1.0, 0, 1, 2.0), SweepRecord(5.0, 6, 1.0, 1, 2, 4.0))
    (row,) = summarize(SweepResult(two, aggregate(two)))
    assert row.mean_snri_db == 3.0
    with pytest.raises(EmptyResult):
        summarize(SweepResult((), ()))


def test_zero_power_baseline_rejected():
    with pytest.raises(ZeroPowerBaseline):
        run_sweep([Signal(np.ones(100), 128)], SweepConfig(trials_per_level=1))


def test_records_csv_roundtrip(tmp_path):
    cfg = SweepConfig(snr_levels_db=(8.0,), trials_per_level=3, scale_counts=(4,), lambda_multipliers=(0.5,))
    result = run_sweep([PERIODIC], cfg)
    path = tmp_path / "rec.csv"
    write_records_csv(result.records, path)
    assert path.read_text().splitlines()[0] == ",".join(RECORD_FIELDS) == "snr_db,n_scales,lambda_mult,trial,seed,snri_db"
    assert tuple(read_records_csv(path)) == result.records


def test_aggregates_json_keyed_by_cell():
    cfg = SweepConfig(snr_levels_db=(8.0, 4.0), trials_per_level=2, scale_counts=(6,), lambda_multipliers=(1.0,))
    payload = json.loads(aggregates_to_json(summarize(run_sweep([PERIODIC], cfg)), cfg))
    assert set(payload["cells"]) == {"snr=8.0|n=6|lambda_mult=1.0", "snr=4.0|n=6|lambda_mult=1.0"}
    assert payload["config"]["trials_per_level"] == 2


def test_trial_seeds_distinct():
    seeds = {trial_seed(0, b, l, k) for b in range(3) for l in range(11) for k in range(20)}
    assert len(seeds) == 3 * 11 * 20
    assert all(0 <= s < 2**64 for s in seeds)
