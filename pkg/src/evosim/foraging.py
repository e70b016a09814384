"""Per-generation tick loop: random-walk movement and food collection.

Every tick moves all entities (ascending id, one heading draw each) and then
resolves collections once (ascending food id, one draw per contested item).
The object-level operations ``step_entity`` and ``collect_food`` and the
array-based ``run_generation_ticks`` share the kernels below, so they
consume the stream identically and agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import TAU, Entity, SimConfig, Traits, World
from .rng import RngStream

# Drag constant of the movement rule; equals the default size_max.
SIZE_DRAG = 10.0


@dataclass(frozen=True)
class CollectionEvent:
    tick: int
    entity_id: int
    food_id: int


def movement_step(traits: Traits) -> float:
    """Distance covered per tick: speed slowed by a size-dependent drag."""
    return traits.speed * (SIZE_DRAG / (SIZE_DRAG + traits.size))


def collection_radius(traits: Traits) -> float:
    return traits.size / 2.0


# ---------------------------------------------------------------------------
# Array kernels
# ---------------------------------------------------------------------------

def _reflect(coord: np.ndarray, limit: float) -> tuple[np.ndarray, np.ndarray]:
    """Mirror coordinates back into [0, limit]; also return the odd-bounce mask."""
    odd = np.zeros(coord.shape, dtype=bool)
    # One mirror per pass; steps longer than the arena need several.
    while True:
        low, high = coord < 0.0, coord > limit
        out = low | high
        if not out.any():
            return coord, odd
        coord = np.where(low, -coord, np.where(high, 2.0 * limit - coord, coord))
        odd ^= out


def _advance(x, y, heading, step, u, max_turn, width, height):
    heading = np.mod(heading + (2.0 * u - 1.0) * max_turn, TAU)
    nx, flip_x = _reflect(x + step * np.cos(heading), width)
    ny, flip_y = _reflect(y + step * np.sin(heading), height)
    heading = np.where(flip_x, math.pi - heading, heading)
    heading = np.where(flip_y, -heading, heading)
    heading = np.mod(heading, TAU)
    # mod of a tiny negative angle can round to exactly TAU
    heading = np.where(heading >= TAU, 0.0, heading)
    return nx, ny, heading


def _winners(ex, ey, radius_sq, fx, fy, rng: RngStream) -> np.ndarray:
    """Entity index awarded each food item, or -1 if nobody is in range."""
    winners = np.full(len(fx), -1, dtype=np.int64)
    if len(ex) == 0 or len(fx) == 0:
        return winners
    dx = fx[:, None] - ex[None, :]
    dy = fy[:, None] - ey[None, :]
    hits = dx * dx + dy * dy <= radius_sq[None, :]
    counts = hits.sum(axis=1)
    single = np.flatnonzero(counts == 1)
    if len(single):
        winners[single] = hits[single].argmax(axis=1)
    contested = np.flatnonzero(counts > 1)
    if len(contested):
        draws = rng.randoms(len(contested))
        for row, u in zip(contested.tolist(), draws.tolist()):
            candidates = np.flatnonzero(hits[row])
            k = len(candidates)
            winners[row] = candidates[min(int(u * k), k - 1)]
    return winners


# ---------------------------------------------------------------------------
# Object-level operations
# ---------------------------------------------------------------------------

def step_entity(entity: Entity, config: SimConfig, rng: RngStream) -> Entity:
    u = rng.randoms(1)
    x, y, h = _advance(
        np.array([entity.pos[0]]),
        np.array([entity.pos[1]]),
        np.array([entity.heading]),
        np.array([movement_step(entity.traits)]),
        u,
        config.max_turn,
        config.arena_width,
        config.arena_height,
    )
    return replace(entity, pos=(float(x[0]), float(y[0])), heading=float(h[0]))


def collect_food(world: World, rng: RngStream, tick: int = 0) -> tuple[World, list[CollectionEvent]]:
    entities = world.entities
    ex = np.array([e.pos[0] for e in entities], dtype=np.float64)
    ey = np.array([e.pos[1] for e in entities], dtype=np.float64)
    rsq = np.array([collection_radius(e.traits) ** 2 for e in entities], dtype=np.float64)
    fx = np.array([f.pos[0] for f in world.food], dtype=np.float64)
    fy = np.array([f.pos[1] for f in world.food], dtype=np.float64)
    winners = _winners(ex, ey, rsq, fx, fy, rng)

    gained = [0] * len(entities)
    events = []
    remaining = []
    for item, w in zip(world.food, winners.tolist()):
        if w < 0:
            remaining.append(item)
            continue
        gained[w] += 1
        events.append(CollectionEvent(tick, entities[w].id, item.id))
    new_entities = [
        replace(e, food_collected=e.food_collected + g) if g else e
        for e, g in zip(entities, gained)
    ]
    return replace(world, entities=new_entities, food=remaining), events


def run_generation_ticks(
    world: World, config: SimConfig, rng: RngStream
) -> tuple[World, list[CollectionEvent]]:
    entities = world.entities
    n = len(entities)
    if n == 0 or not world.food:
        return world, []

    ids = np.array([e.id for e in entities], dtype=np.int64)
    ex = np.array([e.pos[0] for e in entities], dtype=np.float64)
    ey = np.array([e.pos[1] for e in entities], dtype=np.float64)
    heading = np.array([e.heading for e in entities], dtype=np.float64)
    step = np.array([movement_step(e.traits) for e in entities], dtype=np.float64)
    rsq = np.array([collection_radius(e.traits) ** 2 for e in entities], dtype=np.float64)
    gained = np.zeros(n, dtype=np.int64)

    food_ids = np.array([f.id for f in world.food], dtype=np.int64)
    fx = np.array([f.pos[0] for f in world.food], dtype=np.float64)
    fy = np.array([f.pos[1] for f in world.food], dtype=np.float64)

    events: list[CollectionEvent] = []
    for tick in range(1, config.ticks_per_generation + 1):
        ex, ey, heading = _advance(
            ex, ey, heading, step, rng.randoms(n),
            config.max_turn, config.arena_width, config.arena_height,
        )
        winners = _winners(ex, ey, rsq, fx, fy, rng)
        taken = winners >= 0
        if not taken.any():
            continue
        np.add.at(gained, winners[taken], 1)
        events.extend(
            CollectionEvent(tick, int(ids[w]), int(f))
            for f, w in zip(food_ids[taken].tolist(), winners[taken].tolist())
        )
        keep = ~taken
        food_ids, fx, fy = food_ids[keep], fx[keep], fy[keep]
        if len(food_ids) == 0:
            break

    kept_ids = set(food_ids.tolist())
    new_entities = [
        replace(
            e,
            pos=(x, y),
            heading=h,
            food_collected=e.food_collected + g,
        )
        for e, x, y, h, g in zip(entities, ex.tolist(), ey.tolist(), heading.tolist(), gained.tolist())
    ]
    food = [f for f in world.food if f.id in kept_ids]
    return replace(world, entities=new_entities, food=food), events
