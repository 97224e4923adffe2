"""Simulation and metric configuration records.

Defaults reproduce the published run protocol where stated (600x600
environment, 4 organisms, 200 recorded timesteps after 100 of warmup) and
otherwise use bring-up values recorded in the field comments.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

__all__ = ["SimConfig", "MetricsConfig"]

# Fixed model constants (not genome- or config-driven).
MASS_COEFF = 0.01       # cell mass = MASS_COEFF * eps_max
M_CAP = 10.0            # tile-support term cap when the formula is singular


@dataclass(frozen=True)
class SimConfig:
    env_size: tuple[float, float] = (600.0, 600.0)
    timesteps: int = 200
    warmup: int = 100
    n_init_organisms: int = 4
    init_cells_per_organism: int = 12
    init_radius: float = 20.0
    rest_length: float = 4.0        # spring rest length L0
    repulsion_radius: float = 10.0  # rr
    dt: float = 1.0
    n_sources: int = 80
    source_units: int = 50          # nutrition units per source
    particle_value: float = 40.0    # energy per fresh nutrient particle
    nutrient_decay: float = 0.95    # multiplicative per step
    uptake_radius: float = 40.0
    base_metabolic_cost: float = 0.05   # energy per step, scaled by eta
    movement_cost: float = 0.01     # energy per unit distance per unit mass
    split_trigger_size: int = 40    # N_split
    unit_to_mm: float = 0.25
    layer_height: float = 0.2       # mm

    def __post_init__(self):
        w, h = self.env_size
        if not (w > 0 and h > 0):
            raise ValueError("env_size components must be > 0")
        if self.timesteps <= 0:
            raise ValueError("timesteps must be > 0")
        if self.warmup < 0:
            raise ValueError("warmup must be >= 0")
        if self.repulsion_radius <= 0 or self.rest_length <= 0:
            raise ValueError("repulsion_radius and rest_length must be > 0")
        if self.dt <= 0:
            raise ValueError("dt must be > 0")
        if not (0.0 < self.nutrient_decay <= 1.0):
            raise ValueError("nutrient_decay must be in (0, 1]")
        if self.n_init_organisms < 0 or self.init_cells_per_organism < 3:
            raise ValueError("need >= 0 organisms of >= 3 cells")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["env_size"] = list(self.env_size)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> SimConfig:
        d = dict(d)
        if "env_size" in d:
            d["env_size"] = tuple(float(v) for v in d["env_size"])
        return cls(**d)


@dataclass(frozen=True)
class MetricsConfig:
    min_width_mm: float = 5.0       # printability gate threshold
    support_tolerance: float = 0.4  # delta, mm (one extrusion width)
    grid_n: int = 20                # coverage tiles per side
    support_threshold: float = 0.85
    d: float = 0.1                  # splitting-score base

    def __post_init__(self):
        if self.min_width_mm <= 0:
            raise ValueError("min_width_mm must be > 0")
        if self.grid_n < 1:
            raise ValueError("grid_n must be >= 1")
        if not (0.0 < self.support_threshold <= 1.0):
            raise ValueError("support_threshold must be in (0, 1]")
        if not (0.0 < self.d < 1.0):
            raise ValueError("d must be in (0, 1)")
        if self.support_tolerance <= 0:
            raise ValueError("support_tolerance must be > 0")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> MetricsConfig:
        return cls(**d)
