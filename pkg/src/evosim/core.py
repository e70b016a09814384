"""Domain types and world initialization."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields

import numpy as np

from .rng import MASK64, RngStream

TAU = 2.0 * math.pi


class ConfigError(ValueError):
    """Invalid configuration. ``field`` names the offending SimConfig key."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


@dataclass(frozen=True)
class Traits:
    speed: float
    size: float
    cloning: float


@dataclass(frozen=True)
class Entity:
    id: int
    pos: tuple[float, float]
    heading: float
    traits: Traits
    food_collected: int = 0


@dataclass(frozen=True)
class FoodItem:
    id: int
    pos: tuple[float, float]


@dataclass(frozen=True)
class SimConfig:
    seed: int = 0
    start_population: int = 10
    start_food: int = 300
    generations: int = 50
    ticks_per_generation: int = 40
    arena_width: float = 100.0
    arena_height: float = 100.0
    speed_min: float = 0.1
    speed_max: float = 3.0
    size_min: float = 1.0
    size_max: float = 10.0
    mutation_chance: float = 0.5
    speed_mut_delta: float = 0.3
    size_mut_delta: float = 1.0
    cloning_mut_delta: float = 0.1
    max_turn: float = math.pi / 4

    def validate(self) -> SimConfig:
        """Raise ConfigError on the first violated invariant; return self."""
        if not 0 <= self.seed <= MASK64:
            raise ConfigError("seed must fit in 64 unsigned bits", "seed")
        for name in ("start_population", "start_food", "generations", "ticks_per_generation"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive", name)
        for name in ("arena_width", "arena_height"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive", name)
        for trait in ("speed", "size"):
            lo, hi = getattr(self, f"{trait}_min"), getattr(self, f"{trait}_max")
            if not lo < hi:
                raise ConfigError(f"{trait}_min ({lo}) must be < {trait}_max ({hi})", f"{trait}_min")
        if self.speed_min < 0:
            raise ConfigError("speed_min must be non-negative", "speed_min")
        if self.size_min < 0:
            raise ConfigError("size_min must be non-negative", "size_min")
        if not 0.0 <= self.mutation_chance <= 1.0:
            raise ConfigError("mutation_chance must lie in [0, 1]", "mutation_chance")
        for name in ("speed_mut_delta", "size_mut_delta", "cloning_mut_delta"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive", name)
        if not math.isfinite(self.max_turn) or self.max_turn < 0:
            raise ConfigError("max_turn must be a non-negative finite angle", "max_turn")
        return self

    @classmethod
    def field_types(cls) -> dict[str, type]:
        defaults = cls()
        return {f.name: type(getattr(defaults, f.name)) for f in fields(cls)}


@dataclass
class World:
    """One generation's arena state.

    ``next_id`` is the id the next clone receives; it only ever grows so ids
    are never reused after a death.
    """

    width: float
    height: float
    entities: list[Entity]
    food: list[FoodItem]
    generation_index: int = 0
    next_id: int = field(default=-1)

    def __post_init__(self):
        if self.next_id < 0:
            self.next_id = max((e.id for e in self.entities), default=-1) + 1


def init_population(config: SimConfig, rng: RngStream) -> list[Entity]:
    # Draw order per entity: speed, size, cloning, x, y, heading.
    if config.start_population <= 0:
        raise ConfigError("start_population must be positive", "start_population")
    entities = []
    for i in range(config.start_population):
        speed = _uniform(rng, config.speed_min, config.speed_max)
        size = _uniform(rng, config.size_min, config.size_max)
        cloning = rng.random()
        x = _below(rng.random() * config.arena_width, config.arena_width)
        y = _below(rng.random() * config.arena_height, config.arena_height)
        heading = _below(rng.random() * TAU, TAU)
        entities.append(Entity(i, (x, y), heading, Traits(speed, size, cloning)))
    return entities


def scatter_food(config: SimConfig, rng: RngStream) -> list[FoodItem]:
    if config.start_food <= 0:
        raise ConfigError("start_food must be positive", "start_food")
    u = rng.randoms(2 * config.start_food)
    w, h = config.arena_width, config.arena_height
    xs = np.minimum(u[0::2] * w, math.nextafter(w, 0.0)).tolist()
    ys = np.minimum(u[1::2] * h, math.nextafter(h, 0.0)).tolist()
    return [FoodItem(i, (x, y)) for i, (x, y) in enumerate(zip(xs, ys))]


def _below(value: float, limit: float) -> float:
    # u * limit can round up to limit itself.
    return value if value < limit else math.nextafter(limit, 0.0)


def _uniform(rng: RngStream, lo: float, hi: float) -> float:
    if lo == hi:
        rng.random()
        return lo
    return min(lo + rng.random() * (hi - lo), hi)
