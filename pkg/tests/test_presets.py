import time

import pytest

from wptsim import run_experiment
from wptsim.presets import preset, preset_names

BUDGET_SECONDS = 300.0


@pytest.mark.parametrize("name", preset_names())
def test_preset_runs_within_budget(name):
    start = time.perf_counter()
    rows = [row for spec in preset(name) for row in run_experiment(spec)]
    elapsed = time.perf_counter() - start
    assert rows
    assert all(float(r["zdc_mean"]) > 0 for r in rows)
    assert elapsed < BUDGET_SECONDS, f"{name} took {elapsed:.1f}s"
