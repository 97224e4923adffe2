"""Live simulation state: organisms, colony, and the nutrient environment.

Cells are stored struct-of-arrays per organism (positions, velocities,
energies) so the force kernels can run over contiguous memory. Ring order
is array order: cell i is linked to i+1, and the last cell closes the loop
back to index 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..config import SimConfig
from ..genome import Genome

__all__ = [
    "Organism",
    "Colony",
    "NutrientSource",
    "Environment",
    "init_environment",
    "init_colony",
]


@dataclass
class Organism:
    pos: np.ndarray       # (n, 2) float64
    vel: np.ndarray       # (n, 2) float64
    energy: np.ndarray    # (n,)  float64
    # indices of (C_max, C_split) while a split is pending, else None
    pending_split: tuple[int, int] | None = None
    # transient per-step flag: cell hit eps_max during nutrient absorption
    at_capacity: np.ndarray | None = None

    @property
    def n_cells(self) -> int:
        return len(self.energy)

    def copy(self) -> Organism:
        return Organism(
            pos=self.pos.copy(),
            vel=self.vel.copy(),
            energy=self.energy.copy(),
            pending_split=self.pending_split,
            at_capacity=None if self.at_capacity is None else self.at_capacity.copy(),
        )


@dataclass
class Colony:
    organisms: list[Organism]
    n_s: int = 0  # completed organism splits since initialization

    @property
    def n_cells(self) -> int:
        return sum(o.n_cells for o in self.organisms)

    def is_extinct(self) -> bool:
        return not self.organisms

    def copy(self) -> Colony:
        return Colony([o.copy() for o in self.organisms], n_s=self.n_s)


@dataclass
class NutrientSource:
    position: np.ndarray   # (2,)
    remaining_units: int


@dataclass
class Environment:
    bounds: tuple[float, float]           # (width, height), origin at (0, 0)
    sources: list[NutrientSource]
    particle_pos: np.ndarray              # (p, 2)
    particle_value: np.ndarray            # (p,)
    rng: np.random.Generator

    def copy(self) -> Environment:
        rng = np.random.Generator(np.random.PCG64())
        rng.bit_generator.state = self.rng.bit_generator.state
        return Environment(
            bounds=self.bounds,
            sources=[NutrientSource(s.position.copy(), s.remaining_units)
                     for s in self.sources],
            particle_pos=self.particle_pos.copy(),
            particle_value=self.particle_value.copy(),
            rng=rng,
        )


def _random_position(rng: np.random.Generator, bounds) -> np.ndarray:
    w, h = bounds
    return np.array([rng.random() * w, rng.random() * h])


def init_environment(config: SimConfig, seed: int) -> Environment:
    """Scatter the nutrient sources uniformly at random, deterministic in seed."""
    rng = np.random.Generator(np.random.PCG64(seed))
    sources = [
        NutrientSource(_random_position(rng, config.env_size), config.source_units)
        for _ in range(config.n_sources)
    ]
    return Environment(
        bounds=config.env_size,
        sources=sources,
        particle_pos=np.empty((0, 2)),
        particle_value=np.empty((0,)),
        rng=rng,
    )


def organism_centres(config: SimConfig) -> list[tuple[float, float]]:
    """Midpoints of the diagonals from the environment centre to its corners."""
    w, h = config.env_size
    return [
        (w / 4, h / 4),
        (3 * w / 4, h / 4),
        (3 * w / 4, 3 * h / 4),
        (w / 4, 3 * h / 4),
    ]


def init_colony(config: SimConfig, genome: Genome) -> Colony:
    centres = organism_centres(config)
    if config.n_init_organisms > len(centres):
        raise ValueError("at most 4 initial organisms are supported")
    chosen = centres[: config.n_init_organisms]

    # reject configurations where initial rings would overlap or leave bounds
    for i, a in enumerate(chosen):
        for b in chosen[i + 1:]:
            if math.hypot(a[0] - b[0], a[1] - b[1]) < 2 * config.init_radius:
                raise ValueError("init_radius too large: initial organisms overlap")
    w, h = config.env_size
    for cx, cy in chosen:
        if not (config.init_radius <= cx <= w - config.init_radius
                and config.init_radius <= cy <= h - config.init_radius):
            raise ValueError("init_radius too large: initial organism leaves bounds")

    n = config.init_cells_per_organism
    theta = 2 * np.pi * np.arange(n) / n
    organisms = []
    for cx, cy in chosen:
        pos = np.column_stack([
            cx + config.init_radius * np.cos(theta),
            cy + config.init_radius * np.sin(theta),
        ])
        organisms.append(Organism(
            pos=pos,
            vel=np.zeros((n, 2)),
            energy=np.full(n, genome.eps_max / 2),
        ))
    return Colony(organisms)
