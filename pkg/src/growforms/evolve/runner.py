"""Evolutionary-run orchestration: sample, grow, score, rank, adapt —
archived generation by generation."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from ..config import MetricsConfig, SimConfig
from ..genome import decode_genome
from ..metrics import evaluate
from ..metrics.fitness import FitnessVector
from ..sim import grow
from ..stack import individual_id
from .cma import cma_init, cma_sample, cma_update

__all__ = ["EvolutionConfig", "GenerationRecord", "RunArchive", "run_evolution",
           "evaluate_genome"]

OBJECTIVES = ("overall", "printability", "coverage", "complexity")
ARCHIVE_VERSION = 1
# scored on evaluation failure; below every attainable objective value
FAILURE_SCORE = -1.0


@dataclass(frozen=True)
class EvolutionConfig:
    lambda_: int = 40
    mu: int = 2
    generations: int = 150
    objective: str = "overall"
    env_seed: int = 0
    cma_seed: int = 0
    sigma0: float = 0.3
    sim_config: SimConfig = field(default_factory=SimConfig)
    metrics_config: MetricsConfig = field(default_factory=MetricsConfig)

    def __post_init__(self):
        if not (1 <= self.mu < self.lambda_):
            raise ValueError("need 1 <= mu < lambda")
        if self.generations < 1:
            raise ValueError("generations must be >= 1")
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")

    def to_dict(self) -> dict:
        return {
            "lambda": self.lambda_,
            "mu": self.mu,
            "generations": self.generations,
            "objective": self.objective,
            "env_seed": self.env_seed,
            "cma_seed": self.cma_seed,
            "sigma0": self.sigma0,
            "sim_config": self.sim_config.to_dict(),
            "metrics_config": self.metrics_config.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EvolutionConfig":
        return cls(
            lambda_=int(d.get("lambda", 40)),
            mu=int(d.get("mu", 2)),
            generations=int(d.get("generations", 150)),
            objective=d.get("objective", "overall"),
            env_seed=int(d.get("env_seed", 0)),
            cma_seed=int(d.get("cma_seed", 0)),
            sigma0=float(d.get("sigma0", 0.3)),
            sim_config=SimConfig.from_dict(d["sim_config"]) if "sim_config" in d else SimConfig(),
            metrics_config=MetricsConfig.from_dict(d["metrics_config"]) if "metrics_config" in d else MetricsConfig(),
        )


@dataclass
class Individual:
    genome: list[float]            # normalized [0,1]^5
    individual_id: str
    fitness: FitnessVector
    error: str | None = None

    def to_dict(self) -> dict:
        d = {
            "genome": [round(float(v), 12) for v in self.genome],
            "id": self.individual_id,
            "fitness": self.fitness.to_dict(include_reports=False),
        }
        if self.error:
            d["error"] = self.error
        return d


@dataclass
class GenerationRecord:
    generation: int
    individuals: list[Individual]
    best_index: int
    sigma: float

    def to_dict(self) -> dict:
        return {
            "generation": self.generation,
            "individuals": [ind.to_dict() for ind in self.individuals],
            "best_index": self.best_index,
            "sigma": round(self.sigma, 12),
        }


@dataclass
class RunArchive:
    run_id: str
    config: EvolutionConfig
    generations: list[GenerationRecord] = field(default_factory=list)
    best_so_far: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "version": ARCHIVE_VERSION,
            "run_id": self.run_id,
            "config": self.config.to_dict(),
            "generations": [g.to_dict() for g in self.generations],
            "best_so_far": [round(v, 12) for v in self.best_so_far],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def run_id_for(cfg: EvolutionConfig) -> str:
    blob = json.dumps(cfg.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def evaluate_genome(normalized, env_seed: int, sim_config: SimConfig,
                    metrics_config: MetricsConfig) -> FitnessVector:
    """The standard evaluator: grow the colony, score the stack."""
    stack = grow(decode_genome(normalized), env_seed, sim_config)
    return evaluate(stack, metrics_config)


def run_evolution(cfg: EvolutionConfig, evaluator=None,
                  on_individual=None, progress=None) -> RunArchive:
    """Run the full CMA-ES loop.

    evaluator: normalized genome -> FitnessVector; defaults to grow+evaluate
    under cfg's env_seed and configs (the seed is fixed for the whole run).
    on_individual: callback(generation_record), fired after each generation
    is scored; hosts use it to persist individuals as they appear.
    progress: callback(done_generations, total_generations).
    """
    if evaluator is None:
        def evaluator(normalized):
            return evaluate_genome(normalized, cfg.env_seed,
                                   cfg.sim_config, cfg.metrics_config)

    state = cma_init(mu=cfg.mu, seed=cfg.cma_seed, dim=5, sigma0=cfg.sigma0)
    archive = RunArchive(run_id=run_id_for(cfg), config=cfg)
    best = -np.inf
    for gen in range(cfg.generations):
        sigma_snapshot = state.sigma
        samples = cma_sample(state, cfg.lambda_, bounded=True)
        individuals = []
        scores = np.empty(cfg.lambda_)
        for i, x in enumerate(samples):
            ind_id = individual_id(x, cfg.env_seed, cfg.sim_config,
                                   cfg.metrics_config)
            try:
                fitness = evaluator(x)
                error = None
                score = fitness.objective(cfg.objective)
            except Exception as exc:  # individual fails, run continues
                fitness = FitnessVector(P=FAILURE_SCORE, Rc=FAILURE_SCORE,
                                        C=FAILURE_SCORE, overall=FAILURE_SCORE)
                error = f"{type(exc).__name__}: {exc}"
                score = FAILURE_SCORE
            scores[i] = score
            ind = Individual(genome=list(map(float, x)), individual_id=ind_id,
                             fitness=fitness, error=error)
            individuals.append(ind)

        order = np.argsort(-scores, kind="stable")  # stable: ties by index
        best_index = int(order[0])
        best = max(best, float(scores[best_index]))
        archive.generations.append(GenerationRecord(
            generation=gen,
            individuals=individuals,
            best_index=best_index,
            sigma=float(sigma_snapshot),
        ))
        archive.best_so_far.append(best)
        if on_individual is not None:
            on_individual(archive.generations[-1])
        cma_update(state, samples[order[: cfg.mu]])
        if progress is not None:
            progress(gen + 1, cfg.generations)
    return archive
