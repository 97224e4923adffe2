"""Linear interpolation between two evolved genomes: the human-in-the-loop
exploration stage. Endpoints must share environment seed and configs so the
in-between objects differ only by genome."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..metrics.fitness import FitnessVector
from ..stack import individual_id

__all__ = ["InterpolationResult", "interpolate_genomes", "run_interpolation",
           "EnvironmentMismatch"]


class EnvironmentMismatch(ValueError):
    """Endpoints were not generated on identical environments/configs."""


@dataclass
class InterpolationEntry:
    t: float
    genome: list[float]
    individual_id: str
    fitness: FitnessVector

    def to_dict(self) -> dict:
        return {
            "t": round(self.t, 12),
            "genome": [round(float(v), 12) for v in self.genome],
            "id": self.individual_id,
            "fitness": self.fitness.to_dict(include_reports=False),
        }


@dataclass
class InterpolationResult:
    id_a: str
    id_b: str
    steps: int
    entries: list[InterpolationEntry] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "id_a": self.id_a,
            "id_b": self.id_b,
            "steps": self.steps,
            "entries": [e.to_dict() for e in self.entries],
        }


def interpolate_genomes(g_a, g_b, n: int) -> list[tuple[float, np.ndarray]]:
    """n in-between genomes plus the two endpoints, equidistant along the
    straight line from g_a to g_b: t_i = i/(n+1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    a = np.asarray(g_a, dtype=float)
    b = np.asarray(g_b, dtype=float)
    out = []
    for i in range(n + 2):
        t = i / (n + 1)
        out.append((t, (1.0 - t) * a + t * b))
    return out


def run_interpolation(id_a: str, id_b: str, n: int, store,
                      progress=None) -> InterpolationResult:
    """Grow and score every interpolated genome under the endpoints' shared
    environment, persisting each as an individual in the store."""
    from .runner import evaluate_genome  # local import avoids cycle

    rec_a = store.get_individual(id_a)
    rec_b = store.get_individual(id_b)
    if rec_a is None or rec_b is None:
        raise KeyError(f"unknown individual: {id_a if rec_a is None else id_b}")
    same_env = (
        rec_a["env_seed"] == rec_b["env_seed"]
        and rec_a["sim_config"] == rec_b["sim_config"]
        and rec_a["metrics_config"] == rec_b["metrics_config"]
    )
    if not same_env:
        raise EnvironmentMismatch(
            "interpolation endpoints must share env_seed and configs: "
            "the method requires identical environments"
        )

    from ..config import MetricsConfig, SimConfig
    env_seed = int(rec_a["env_seed"])
    sim_cfg = SimConfig.from_dict(rec_a["sim_config"])
    met_cfg = MetricsConfig.from_dict(rec_a["metrics_config"])

    result = InterpolationResult(id_a=id_a, id_b=id_b, steps=n)
    points = interpolate_genomes(rec_a["genome"], rec_b["genome"], n)
    for i, (t, genome) in enumerate(points):
        ind_id = individual_id(genome, env_seed, sim_cfg, met_cfg)
        fitness, stack = _grow_and_store(genome, env_seed, sim_cfg, met_cfg,
                                         ind_id, store)
        result.entries.append(InterpolationEntry(
            t=t, genome=list(map(float, genome)),
            individual_id=ind_id, fitness=fitness,
        ))
        if progress is not None:
            progress(i + 1, len(points))
    return result


def _grow_and_store(genome, env_seed, sim_cfg, met_cfg, ind_id, store):
    from ..metrics import evaluate
    from ..sim import grow
    from ..genome import decode_genome

    stack = grow(decode_genome(genome), env_seed, sim_cfg)
    fitness = evaluate(stack, met_cfg)
    store.put_individual(ind_id, genome, env_seed, sim_cfg, met_cfg,
                         fitness, stack=stack)
    return fitness, stack
