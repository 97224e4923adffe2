from .cma import CmaState, cma_init, cma_sample, cma_update, log_weights
from .interpolate import (
    EnvironmentMismatch,
    InterpolationResult,
    interpolate_genomes,
    run_interpolation,
)
from .runner import EvolutionConfig, GenerationRecord, RunArchive, evaluate_genome, run_evolution

__all__ = [
    "CmaState",
    "cma_init",
    "cma_sample",
    "cma_update",
    "log_weights",
    "EvolutionConfig",
    "GenerationRecord",
    "RunArchive",
    "run_evolution",
    "evaluate_genome",
    "interpolate_genomes",
    "run_interpolation",
    "InterpolationResult",
    "EnvironmentMismatch",
]
