"""Multi-generation runs, food sweeps and batch summaries."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .core import Entity, SimConfig, World, init_population, scatter_food
from .foraging import CollectionEvent, run_generation_ticks
from .lifecycle import LifecycleOutcome, apply_lifecycle
from .rng import MASK64, make_rng

SEED_MIX_MULTIPLIER = 1_000_003


@dataclass(frozen=True)
class GenerationStats:
    generation: int
    population: int
    avg_speed: float
    avg_size: float
    avg_cloning: float
    food_remaining: int
    clones_born: int
    deaths: int


@dataclass(frozen=True)
class SimulationResult:
    config: SimConfig
    seed: int
    series: list[GenerationStats]
    extinct_at: int | None = None

    @property
    def final_population(self) -> int:
        return self.series[-1].population if self.series else 0


@dataclass(frozen=True)
class FoodLevelSummary:
    food: int
    trials: int
    extinction_rate: float
    mean_final_population: float
    mean_speed_slope: float


# Keyed by food level, ascending.
SweepSummary = dict[int, FoodLevelSummary]


class SweepError(RuntimeError):
    def __init__(self, food: int, trial: int, cause: Exception):
        super().__init__(f"run failed at food={food}, trial={trial}: {cause}")
        self.food = food
        self.trial = trial


class UndefinedTrendError(ValueError):
    pass


def _stats(generation: int, population: list[Entity], food_remaining: int,
           clones_born: int, deaths: int) -> GenerationStats:
    n = len(population)
    if n == 0:
        avg_speed = avg_size = avg_cloning = 0.0
    else:
        avg_speed = sum(e.traits.speed for e in population) / n
        avg_size = sum(e.traits.size for e in population) / n
        avg_cloning = sum(e.traits.cloning for e in population) / n
    return GenerationStats(generation, n, avg_speed, avg_size, avg_cloning,
                           food_remaining, clones_born, deaths)


Observer = Callable[[World, list[CollectionEvent], LifecycleOutcome], None]


def run_simulation(config: SimConfig, population: list[Entity] | None = None,
                   observer: Observer | None = None) -> SimulationResult:
    """Run one seeded simulation.

    ``population`` replaces the random starting population; the stream is
    then used only for food, movement and lifecycle draws. ``observer`` is
    called once per generation with the post-tick world, that generation's
    collection events and the lifecycle outcome.
    """
    config.validate()
    rng = make_rng(config.seed)
    entities = init_population(config, rng) if population is None else list(population)
    next_id = max((e.id for e in entities), default=-1) + 1
    series: list[GenerationStats] = []
    extinct_at = None
    for g in range(config.generations):
        world = World(config.arena_width, config.arena_height,
                      [replace(e, food_collected=0) for e in entities],
                      scatter_food(config, rng), g, next_id)
        world, events = run_generation_ticks(world, config, rng)
        outcome = apply_lifecycle(world, config, rng)
        if observer is not None:
            observer(world, events, outcome)
        entities = outcome.population
        next_id = outcome.next_id
        series.append(_stats(g, entities, len(world.food),
                             len(outcome.clones), len(outcome.deaths)))
        if outcome.extinct:
            extinct_at = g
            break
    return SimulationResult(config, config.seed, series, extinct_at)


def trial_seed(base_seed: int, food: int, trial: int) -> int:
    return (base_seed ^ (food * SEED_MIX_MULTIPLIER + trial)) & MASK64


def sweep_configs(base_config: SimConfig, food_levels: Sequence[int], trials: int) -> list[tuple[int, int, SimConfig]]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not food_levels:
        raise ValueError("food_levels must be non-empty")
    return [
        (f, t, replace(base_config, start_food=f, seed=trial_seed(base_config.seed, f, t)))
        for f in food_levels
        for t in range(trials)
    ]


def _run_cell(cell: tuple[int, int, SimConfig]) -> SimulationResult:
    f, t, config = cell
    try:
        return run_simulation(config)
    except Exception as exc:
        raise SweepError(f, t, exc) from exc


def run_sweep(base_config: SimConfig, food_levels: Sequence[int], trials: int,
              jobs: int = 1) -> list[SimulationResult]:
    """Run every (food level, trial) cell; results ordered by (food, trial).

    Trial ``t`` (0-based) at food ``f`` is seeded with
    ``base_seed ^ (f * 1_000_003 + t)``.
    """
    cells = sweep_configs(base_config, food_levels, trials)
    if jobs <= 1:
        return [_run_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_cell, cells))


def speed_trend_slope(series: Sequence[GenerationStats]) -> float:
    """OLS slope of average speed against generation, over live generations."""
    live = [s for s in series if s.population > 0]
    if len(live) < 2:
        raise UndefinedTrendError("speed trend needs at least 2 generations with population > 0")
    xs = [float(s.generation) for s in live]
    ys = [s.avg_speed for s in live]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / sxx


def summarize(results: Sequence[SimulationResult]) -> SweepSummary:
    if not results:
        raise ValueError("cannot summarize an empty batch")
    groups: dict[int, list[SimulationResult]] = {}
    for r in results:
        groups.setdefault(r.config.start_food, []).append(r)
    summary = {}
    for food in sorted(groups):
        runs = groups[food]
        slopes = []
        for r in runs:
            try:
                slopes.append(speed_trend_slope(r.series))
            except UndefinedTrendError:
                pass
        summary[food] = FoodLevelSummary(
            food=food,
            trials=len(runs),
            extinction_rate=sum(r.extinct_at is not None for r in runs) / len(runs),
            mean_final_population=sum(r.final_population for r in runs) / len(runs),
            mean_speed_slope=sum(slopes) / len(slopes) if slopes else float("nan"),
        )
    return summary
