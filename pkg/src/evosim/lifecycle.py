"""End-of-generation judgment: survival, cloning and mutation."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .core import Entity, SimConfig, Traits, World
from .rng import RngStream

MUTABLE_TRAITS = ("speed", "size", "cloning")


@dataclass(frozen=True)
class LifecycleOutcome:
    survivors: list[Entity]
    clones: list[Entity]
    deaths: list[int]
    extinct: bool
    next_id: int
    parent_of: dict[int, int] = field(default_factory=dict)  # clone id -> parent id

    @property
    def population(self) -> list[Entity]:
        return self.survivors + self.clones


def survival_cost(traits: Traits) -> float:
    """Food an entity must gather in one generation to live to the next."""
    return (5.0 + traits.size) * (5.0 + traits.speed) * (1.0 + traits.cloning) / 36.0


def survives(entity: Entity) -> bool:
    return entity.food_collected >= survival_cost(entity.traits)


def can_attempt_clone(entity: Entity) -> bool:
    return entity.food_collected >= 2.0 * survival_cost(entity.traits)


def trait_bounds(trait: str, config: SimConfig) -> tuple[float, float]:
    if trait == "cloning":
        return 0.0, 1.0
    return getattr(config, f"{trait}_min"), getattr(config, f"{trait}_max")


def mutate(parent_traits: Traits, config: SimConfig, rng: RngStream) -> Traits:
    """Copy the parent's traits, perturbing at most one of them.

    Consumes one draw when no mutation happens and three when it does
    (gate, trait choice, perturbation). The perturbed trait is clamped to
    its bounds.
    """
    if rng.random() >= config.mutation_chance:
        return parent_traits
    trait = MUTABLE_TRAITS[min(int(rng.random() * 3), 2)]
    delta = getattr(config, f"{trait}_mut_delta")
    lo, hi = trait_bounds(trait, config)
    value = getattr(parent_traits, trait) + (2.0 * rng.random() - 1.0) * delta
    return replace(parent_traits, **{trait: min(max(value, lo), hi)})


def apply_lifecycle(world: World, config: SimConfig, rng: RngStream) -> LifecycleOutcome:
    # Ascending id; for each clone-eligible survivor: clone draw, then mutate's draws.
    survivors, clones, deaths = [], [], []
    parent_of = {}
    next_id = world.next_id
    for entity in sorted(world.entities, key=lambda e: e.id):
        if not survives(entity):
            deaths.append(entity.id)
            continue
        if can_attempt_clone(entity) and rng.random() < entity.traits.cloning:
            clones.append(
                Entity(next_id, entity.pos, entity.heading, mutate(entity.traits, config, rng))
            )
            parent_of[next_id] = entity.id
            next_id += 1
        survivors.append(replace(entity, food_collected=0))
    return LifecycleOutcome(
        survivors=survivors,
        clones=clones,
        deaths=deaths,
        extinct=not survivors and not clones,
        next_id=next_id,
        parent_of=parent_of,
    )
