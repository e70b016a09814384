"""Seed-reproducible simulator of natural selection among cloning foragers."""

from .core import ConfigError, Entity, FoodItem, SimConfig, Traits, World, init_population, scatter_food
from .experiment import (
    GenerationStats,
    SimulationResult,
    run_simulation,
    run_sweep,
    speed_trend_slope,
    summarize,
)
from .foraging import CollectionEvent, collect_food, movement_step, run_generation_ticks, step_entity
from .lifecycle import LifecycleOutcome, apply_lifecycle, can_attempt_clone, mutate, survival_cost, survives
from .rng import RngStream, make_rng

__version__ = "0.1.0"
