import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_entity
from evosim.core import ConfigError, SimConfig
from evosim.experiment import (
    GenerationStats,
    SimulationResult,
    SweepError,
    UndefinedTrendError,
    run_simulation,
    run_sweep,
    speed_trend_slope,
    summarize,
    trial_seed,
)


def stats(g, speed, pop=5):
    return GenerationStats(g, pop, speed, 5.0, 0.5, 0, 0, 0)


def check_bookkeeping(result):
    prev = result.config.start_population
    for s in result.series:
        assert s.population == prev - s.deaths + s.clones_born
        prev = s.population


def test_run_is_deterministic():
    cfg = SimConfig(seed=5, start_food=200, generations=15)
    assert run_simulation(cfg) == run_simulation(cfg)


def test_single_generation():
    result = run_simulation(SimConfig(seed=1, generations=1))
    assert len(result.series) == 1
    assert result.series[0].generation == 0


def test_invalid_config_propagates():
    with pytest.raises(ConfigError):
        run_simulation(SimConfig(speed_min=5.0))


@pytest.mark.parametrize("food,seed", [(100, 3), (200, 4), (300, 5)])
def test_bookkeeping_and_extinction_fields(food, seed):
    result = run_simulation(SimConfig(seed=seed, start_food=food))
    check_bookkeeping(result)
    assert [s.generation for s in result.series] == list(range(len(result.series)))
    if result.extinct_at is None:
        assert len(result.series) == result.config.generations
        assert result.series[-1].population > 0
    else:
        assert result.extinct_at == len(result.series) - 1
        assert result.series[-1].population == 0
        assert all(s.population > 0 for s in result.series[:-1])
        last = result.series[-1]
        assert (last.avg_speed, last.avg_size, last.avg_cloning) == (0.0, 0.0, 0.0)
    assert all(0 <= s.food_remaining <= food for s in result.series)


def test_scarce_food_goes_extinct_early_for_some_seeds():
    ends = [run_simulation(SimConfig(seed=s, start_food=100)).extinct_at for s in range(10)]
    assert any(e is not None and e < 15 for e in ends)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**64 - 1))
def test_zero_cloning_population_never_grows(seed):
    cfg = SimConfig(seed=seed, start_food=300, generations=20)
    pop = [make_entity(i, pos=(5.0 + 9 * i, 50.0), speed=2.0, size=6.0, cloning=0.0) for i in range(10)]
    result = run_simulation(cfg, population=pop)
    pops = [10] + [s.population for s in result.series]
    assert all(b <= a for a, b in zip(pops, pops[1:]))
    assert all(s.clones_born == 0 for s in result.series)


def test_guaranteed_survival_population_never_shrinks():
    cfg = SimConfig(seed=2, start_food=20000, generations=6, ticks_per_generation=40,
                    size_min=9.9, size_max=10.0, speed_min=2.9, speed_max=3.0)
    result = run_simulation(cfg)
    pops = [10] + [s.population for s in result.series]
    assert all(b >= a for a, b in zip(pops, pops[1:]))
    assert pops[-1] > 10


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

def test_trial_seed_rule():
    assert trial_seed(7, 100, 0) == 7 ^ 100_000_300
    assert trial_seed(2**64 - 1, 300, 2) == (2**64 - 1) ^ (300 * 1_000_003 + 2)


def test_sweep_shape_and_order():
    base = SimConfig(seed=7, generations=5)
    results = run_sweep(base, [100, 200, 300], 3)
    assert len(results) == 9
    assert [(r.config.start_food, r.seed) for r in results] == [
        (f, trial_seed(7, f, t)) for f in (100, 200, 300) for t in range(3)
    ]
    assert results == run_sweep(base, [100, 200, 300], 3)


def test_sweep_trial_isolation():
    base = SimConfig(seed=11, generations=4)
    results = run_sweep(base, [300, 100], 2)
    lone = run_simulation(replace(base, start_food=100, seed=trial_seed(11, 100, 1)))
    assert results[3] == lone
    assert run_sweep(base, [100], 1) == [results[2]]


def test_parallel_sweep_matches_serial():
    base = SimConfig(seed=3, generations=4)
    assert run_sweep(base, [100, 300], 2, jobs=2) == run_sweep(base, [100, 300], 2)


def test_sweep_error_carries_coordinates():
    with pytest.raises(SweepError) as info:
        run_sweep(SimConfig(generations=0), [100], 1)
    assert (info.value.food, info.value.trial) == (100, 0)


@pytest.mark.parametrize("trials,levels", [(0, [100]), (1, [])])
def test_sweep_rejects_bad_shape(trials, levels):
    with pytest.raises(ValueError):
        run_sweep(SimConfig(), levels, trials)


# ---------------------------------------------------------------------------
# Trend and summary
# ---------------------------------------------------------------------------

def test_slope_examples():
    assert speed_trend_slope([stats(g, 1.5) for g in range(6)]) == 0.0
    up = [stats(0, 1.0), stats(1, 2.0), stats(2, 3.0)]
    assert speed_trend_slope(up) == 1.0
    down = [stats(0, 3.0), stats(1, 2.0), stats(2, 1.0)]
    assert speed_trend_slope(down) == -1.0


def test_slope_ignores_dead_generations():
    series = [stats(0, 1.0), stats(1, 2.0), stats(2, 0.0, pop=0)]
    assert speed_trend_slope(series) == pytest.approx(1.0)


def test_slope_undefined():
    with pytest.raises(UndefinedTrendError):
        speed_trend_slope([stats(0, 1.0), stats(1, 0.0, pop=0)])


@given(st.lists(st.floats(0, 10), min_size=2, max_size=60))
def test_slope_matches_polyfit(speeds):
    series = [stats(g, v) for g, v in enumerate(speeds)]
    want = np.polyfit(np.arange(len(speeds), dtype=float), np.array(speeds), 1)[0]
    assert speed_trend_slope(series) == pytest.approx(want, abs=1e-9)
    rev = [stats(g, v) for g, v in enumerate(reversed(speeds))]
    assert speed_trend_slope(rev) == pytest.approx(-speed_trend_slope(series), abs=1e-9)


def fake_result(food, series, extinct_at=None):
    return SimulationResult(SimConfig(start_food=food), 0, series, extinct_at)


def test_summary_all_extinct():
    runs = [fake_result(100, [stats(0, 1.0, pop=0)], 0), fake_result(100, [stats(0, 1.0), stats(1, 0.0, pop=0)], 1)]
    s = summarize(runs)[100]
    assert s.extinction_rate == 1.0 and s.mean_final_population == 0 and s.trials == 2
    assert math.isnan(s.mean_speed_slope)


def test_summary_singleton():
    run = fake_result(300, [stats(0, 1.0, pop=4), stats(1, 1.5, pop=7)])
    s = summarize([run])[300]
    assert (s.extinction_rate, s.mean_final_population, s.mean_speed_slope) == (0.0, 7.0, 0.5)


def test_summary_groups_by_food_sorted():
    runs = [fake_result(300, [stats(0, 1.0)]), fake_result(100, [stats(0, 1.0)])]
    assert list(summarize(runs)) == [100, 300]


def test_summary_rejects_empty():
    with pytest.raises(ValueError):
        summarize([])
